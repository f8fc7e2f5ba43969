import math
import random
from fractions import Fraction

import pytest

from labelweight_hss.codes import LabeledCode, Labeling, goppa_build, hermitian_build, rs_build
from labelweight_hss.errors import DecodeError
from labelweight_hss.galois import FieldSpec
from labelweight_hss.hss import run_end_to_end, scheme_for_code, scheme_rate
from labelweight_hss.matrix import MatrixF
from labelweight_hss.protocol import (
    INPUT_SHARES,
    OUTPUT_SHARES,
    RESULT,
    Transcript,
    WireMessage,
    decode,
    element_width,
    encode,
    simulate,
    transcript_from_text,
    transcript_to_text,
)

GF2 = FieldSpec(2)
GF4 = FieldSpec(2, 2)
GF5 = FieldSpec(5)


def repetition_scheme():
    code = LabeledCode(GF2, MatrixF(GF2, [[1, 1]]), Labeling.identity(2))
    return scheme_for_code(code, t=1, d=1, m=1)


# -- codec ----------------------------------------------------------------------


def test_element_widths():
    assert element_width(GF2) == 1
    assert element_width(GF4) == 1
    assert element_width(GF5) == 1
    assert element_width(FieldSpec(2, 8)) == 1
    assert element_width(FieldSpec(2, 9)) == 2
    assert element_width(FieldSpec(257)) == 2


def test_empty_result_frame_is_header_only():
    frame = encode(WireMessage(RESULT, 3, 0, ()), width=1)
    assert len(frame) == 10  # 1 version + 1 kind + 2 sender + 2 receiver + 4 length


def test_f2_element_single_byte():
    frame = encode(WireMessage(OUTPUT_SHARES, 1, 3, (1,)), width=element_width(GF2))
    assert frame[-1:] == b"\x01"


def test_gf4_element_bit_packing():
    # coefficients (1, 1) pack low-to-high into 0b11
    value = GF4.encode([1, 1])
    assert value == 3
    frame = encode(WireMessage(OUTPUT_SHARES, 1, 3, (value,)), width=element_width(GF4))
    assert frame[-1:] == b"\x03"


def test_roundtrip_fuzz_10k():
    rng = random.Random(77)
    for _ in range(10_000):
        width = rng.choice([1, 2])
        kind = rng.choice([INPUT_SHARES, OUTPUT_SHARES, RESULT])
        sender = rng.randrange(2**16)
        receiver = rng.randrange(2**16)
        payload = tuple(rng.randrange(256**width) for _ in range(rng.randrange(0, 20)))
        message = WireMessage(kind, sender, receiver, payload)
        frame = encode(message, width)
        assert decode(frame, width) == message


def test_decode_rejects_any_one_byte_truncation():
    message = WireMessage(INPUT_SHARES, 0, 2, (1, 0, 1))
    frame = encode(message, 1)
    for cut in range(1, len(frame) + 1):
        with pytest.raises(DecodeError):
            decode(frame[:-cut], 1)


def test_decode_rejects_bad_version_and_kind():
    frame = bytearray(encode(WireMessage(RESULT, 1, 0, (1,)), 1))
    bad_version = bytes([0x02]) + bytes(frame[1:])
    with pytest.raises(DecodeError):
        decode(bad_version, 1)
    bad_kind = bytes([frame[0], 9]) + bytes(frame[2:])
    with pytest.raises(DecodeError):
        decode(bad_kind, 1)


def test_decode_rejects_width_mismatch_and_field_overflow():
    frame = encode(WireMessage(RESULT, 1, 0, (1, 2, 3)), 1)
    with pytest.raises(DecodeError):
        decode(frame, 2)
    with pytest.raises(DecodeError):
        decode(frame, 1, q=2)


# -- simulation ------------------------------------------------------------------


def test_repetition_transcript_shape():
    scheme = repetition_scheme()
    transcript, outputs = simulate(scheme, [[1]], seed=0)
    kinds = [m.kind for m in transcript.messages]
    assert kinds == [INPUT_SHARES, INPUT_SHARES, OUTPUT_SHARES, OUTPUT_SHARES, RESULT]
    out_shares = [m for m in transcript.messages if m.kind == OUTPUT_SHARES]
    assert all(len(m.payload) == 1 for m in out_shares)
    assert transcript.downloaded_symbols == 2
    assert transcript.download_cost_bits == 2.0  # 2 symbols of log2(2) bits
    assert outputs == [1]


def test_simulation_matches_monolith_50_seeds():
    for code, t, d in [(goppa_build(3, 1), 1, 1), (rs_build(5, 5, 2), 1, 2)]:
        scheme = scheme_for_code(code, t=t, d=d)
        rng = random.Random(5)
        q = scheme.params.spec.q
        for trial in range(50):
            secrets = [
                [rng.randrange(q) for _ in range(scheme.params.m)]
                for _ in range(scheme.params.ell)
            ]
            _, sim_outputs = simulate(scheme, secrets, seed=trial)
            mono = run_end_to_end(scheme, secrets, seed=trial)
            assert sim_outputs == mono.outputs
            assert mono.ok


def test_hermitian_measured_download_rate():
    scheme = scheme_for_code(hermitian_build(2, 5), t=1, d=2)
    transcript, _ = simulate(scheme, [[1, 1]] * 5, seed=1)
    assert transcript.download_rate(scheme.params.ell) == Fraction(5, 8)
    assert transcript.download_rate(scheme.params.ell) == scheme_rate(scheme)
    # measured bits: n symbols of log2(4) bits
    assert transcript.download_cost_bits == pytest.approx(8 * math.log2(4))


def test_download_rate_inverse_relation():
    scheme = scheme_for_code(goppa_build(4, 2), t=1, d=2)
    transcript, _ = simulate(scheme, [[1, 1]] * 8, seed=2)
    ell = scheme.params.ell
    ratio = transcript.download_cost_bits / (ell * math.log2(scheme.params.spec.q))
    assert ratio == pytest.approx(1 / float(scheme_rate(scheme)))


def test_transcript_dump_roundtrip():
    scheme = repetition_scheme()
    transcript, _ = simulate(scheme, [[1]], seed=3)
    text = transcript_to_text(transcript)
    parsed = transcript_from_text(text)
    assert parsed.frames == transcript.frames
    assert parsed.downloaded_symbols == transcript.downloaded_symbols
    assert transcript_to_text(parsed) == text


def test_transcript_text_rejects_garbage():
    with pytest.raises(DecodeError):
        transcript_from_text("nope\n")
    scheme = repetition_scheme()
    transcript, _ = simulate(scheme, [[1]], seed=3)
    text = transcript_to_text(transcript)
    lines = text.splitlines()
    lines[2] = lines[2][:-2]  # truncate one byte from the first frame
    with pytest.raises(DecodeError):
        transcript_from_text("\n".join(lines) + "\n")


def test_identical_seed_identical_transcript():
    scheme = scheme_for_code(rs_build(5, 5, 2), t=1, d=2)
    t1, o1 = simulate(scheme, [[2, 3], [4, 1]], seed=9)
    t2, o2 = simulate(scheme, [[2, 3], [4, 1]], seed=9)
    assert o1 == o2
    assert t1.frames == t2.frames
