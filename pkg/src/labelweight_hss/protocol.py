"""Deterministic message-passing realization of a scheme run.

Actors: an input client (id 0), servers 1..s, and an output client
(id s+1).  The input client shares every secret and fans the per-server
fragments out as INPUT_SHARES frames; each server evaluates its output
polynomials and sends one OUTPUT_SHARES frame to the output client, which
merges them by server id (arrival order is irrelevant), reconstructs, and
emits a RESULT frame.  Channels are reliable, ordered and lossless;
actors run round-robin by id, so a fixed seed gives a byte-identical
transcript.

Wire frame layout (little-endian):

    version  1 byte   (0x01)
    kind     1 byte   (INPUT_SHARES=1, OUTPUT_SHARES=2, RESULT=3)
    sender   2 bytes
    receiver 2 bytes
    length   4 bytes  payload byte count
    payload  field elements, fixed width ceil(log2(q)/8) bytes each

The element width depends only on the field order, so frames do not
self-describe the field; codec calls take the width (or spec) explicitly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DecodeError, DimensionMismatch
from .galois import FieldSpec
from .hss import (
    HssScheme,
    collect_output_shares,
    default_monomial,
    eval_server,
    reconstruct,
    share_all_secrets,
    subsets_of_size,
)

TRANSCRIPT_FORMAT_TAG = "labelweight-hss-transcript/v1"

WIRE_VERSION = 0x01
INPUT_SHARES = 1
OUTPUT_SHARES = 2
RESULT = 3
_KINDS = (INPUT_SHARES, OUTPUT_SHARES, RESULT)
_HEADER_LEN = 10  # 1 version + 1 kind + 2 sender + 2 receiver + 4 length


def element_width(spec: FieldSpec) -> int:
    """Bytes per element: ceil(log2(q) / 8)."""
    return (max(spec.q - 1, 1).bit_length() + 7) // 8


@dataclass(frozen=True)
class WireMessage:
    kind: int
    sender: int
    receiver: int
    payload: tuple[int, ...]


def encode(message: WireMessage, width: int) -> bytes:
    """Frame a message; elements are packed little-endian at fixed width."""
    if message.kind not in _KINDS:
        raise ValueError(f"unknown message kind {message.kind}")
    body = b"".join(v.to_bytes(width, "little") for v in message.payload)
    return (
        bytes((WIRE_VERSION, message.kind))
        + message.sender.to_bytes(2, "little")
        + message.receiver.to_bytes(2, "little")
        + len(body).to_bytes(4, "little")
        + body
    )


def decode(frame: bytes, width: int, q: int | None = None) -> WireMessage:
    """Parse a frame; any framing defect raises DecodeError."""
    if len(frame) < _HEADER_LEN:
        raise DecodeError(f"frame too short: {len(frame)} bytes")
    if frame[0] != WIRE_VERSION:
        raise DecodeError(f"bad version byte {frame[0]:#x}")
    kind = frame[1]
    if kind not in _KINDS:
        raise DecodeError(f"bad message kind {kind}")
    sender = int.from_bytes(frame[2:4], "little")
    receiver = int.from_bytes(frame[4:6], "little")
    length = int.from_bytes(frame[6:10], "little")
    body = frame[_HEADER_LEN:]
    if len(body) != length:
        raise DecodeError(f"length field {length} != payload bytes {len(body)}")
    if length % width:
        raise DecodeError(f"payload of {length} bytes not a multiple of element width {width}")
    payload = tuple(
        int.from_bytes(body[i : i + width], "little") for i in range(0, length, width)
    )
    if q is not None and any(v >= q for v in payload):
        raise DecodeError("payload element outside the field")
    return WireMessage(kind, sender, receiver, payload)


@dataclass
class Transcript:
    """Ordered frame log with per-link byte counts and download accounting."""

    field_order: int
    messages: list[WireMessage] = field(default_factory=list)
    frames: list[bytes] = field(default_factory=list)
    link_bytes: dict[tuple[int, int], int] = field(default_factory=dict)
    downloaded_symbols: int = 0

    def record(self, message: WireMessage, frame: bytes, output_client: int) -> None:
        self.messages.append(message)
        self.frames.append(frame)
        key = (message.sender, message.receiver)
        self.link_bytes[key] = self.link_bytes.get(key, 0) + len(frame)
        if message.kind == OUTPUT_SHARES and message.receiver == output_client:
            self.downloaded_symbols += len(message.payload)

    @property
    def download_cost_bits(self) -> float:
        """Information measure: downloaded symbols times log2(q)."""
        return self.downloaded_symbols * math.log2(self.field_order)

    def download_rate(self, ell: int) -> Fraction:
        return Fraction(ell, self.downloaded_symbols)


def _fragment_order(params, j: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """Canonical payload order of server j's input fragments."""
    subsets = [T for T in subsets_of_size(params.s, params.t) if j not in T]
    return [
        (i, k, T)
        for i in range(1, params.ell + 1)
        for k in range(1, params.m + 1)
        for T in subsets
    ]


def simulate(
    scheme: HssScheme,
    secrets: Sequence[Sequence],
    seed: int,
    var_indices: tuple[int, ...] | None = None,
) -> tuple[Transcript, list[int]]:
    """Run the full protocol; returns (transcript, reconstructed outputs).

    Sharing consumes the seeded generator exactly as the monolithic driver
    does, so outputs match run_end_to_end(scheme, secrets, seed) exactly.
    Every payload makes a real encode/decode round trip.
    """
    params = scheme.params
    spec = params.spec
    width = element_width(spec)
    chosen = default_monomial(params) if var_indices is None else tuple(var_indices)
    output_client = params.s + 1
    transcript = Transcript(field_order=spec.q)

    def send(message: WireMessage) -> WireMessage:
        frame = encode(message, width)
        transcript.record(message, frame, output_client)
        return decode(frame, width, spec.q)

    # Input client (id 0): share everything, fan out per-server fragments.
    rng = random.Random(seed)
    grid = [[int(v) if not hasattr(v, "value") else v.value for v in row] for row in secrets]
    _, views = share_all_secrets(params, grid, rng)
    inboxes: dict[int, WireMessage] = {}
    for j in range(1, params.s + 1):
        order = _fragment_order(params, j)
        payload = tuple(views[j][(i, k)][T] for i, k, T in order)
        inboxes[j] = send(WireMessage(INPUT_SHARES, 0, j, payload))

    # Servers 1..s in id order: rebuild views from the wire, evaluate.
    received: dict[int, list[int]] = {}
    for j in range(1, params.s + 1):
        message = inboxes[j]
        order = _fragment_order(params, j)
        if len(message.payload) != len(order):
            raise DecodeError(f"server {j}: expected {len(order)} elements, got {len(message.payload)}")
        view: dict[tuple[int, int], dict] = {}
        for (i, k, T), value in zip(order, message.payload):
            view.setdefault((i, k), {})[T] = value
        z_j = eval_server(scheme, j, view, chosen)
        delivered = send(WireMessage(OUTPUT_SHARES, j, output_client, tuple(z_j)))
        received[delivered.sender] = list(delivered.payload)

    # Output client: merge by server id, reconstruct, announce.
    outputs = reconstruct(scheme, collect_output_shares(scheme, received))
    send(WireMessage(RESULT, output_client, 0, tuple(outputs)))
    return transcript, outputs


def transcript_to_text(transcript: Transcript) -> str:
    lines = [TRANSCRIPT_FORMAT_TAG, f"q {transcript.field_order}"]
    lines.extend(frame.hex() for frame in transcript.frames)
    return "\n".join(lines) + "\n"


def transcript_from_text(text: str, ell: int | None = None) -> Transcript:
    """Rebuild a transcript from its hex dump (for replay / inspection)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != TRANSCRIPT_FORMAT_TAG:
        raise DecodeError(f"missing {TRANSCRIPT_FORMAT_TAG} header")
    if len(lines) < 2 or not lines[1].startswith("q "):
        raise DecodeError("missing field order line")
    q = int(lines[1][2:])
    spec_width = (max(q - 1, 1).bit_length() + 7) // 8
    transcript = Transcript(field_order=q)
    output_client = None
    frames = []
    for line in lines[2:]:
        try:
            frames.append(bytes.fromhex(line))
        except ValueError as exc:
            raise DecodeError(f"bad hex frame: {exc}") from exc
    # the output client is the receiver of OUTPUT_SHARES frames / sender of RESULT
    for frame in frames:
        message = decode(frame, spec_width, q)
        if message.kind == RESULT:
            output_client = message.sender
    for frame in frames:
        message = decode(frame, spec_width, q)
        transcript.record(message, frame, output_client if output_client is not None else -1)
    return transcript
