import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nisqwalsh.core import EmptyInputError, SampleSet
from nisqwalsh.fileio import (
    CircuitFormatError,
    SampleFormatError,
    circuit_to_dict,
    config_hash,
    emit_report,
    emit_spectrum_csv,
    format_samples,
    import_delimited,
    parse_circuit,
    parse_sample_text,
    parse_samples,
    read_spectrum_csv,
    write_circuit,
    write_samples,
)
from nisqwalsh.qsim import GateSetConfig, NonUnitaryGateError, QuantumCircuit, generate_random_circuit
from nisqwalsh.qsim import gates as G
from nisqwalsh.walsh import DegreeProfile


def test_parse_minimal():
    s = parse_sample_text("# n=2\n00\n11\n")
    assert s.n == 2 and list(s.samples) == [0, 3]


def test_bit_order_is_character_order():
    s = parse_sample_text("# n=3\n100\n001\n")
    assert list(s.samples) == [1, 4]


@pytest.mark.parametrize(
    "text, line",
    [("# n=3\n010\n01x\n", 3), ("# n=3\n010\n0101\n", 3), ("# n=2\n# source=a\n\n01\n", 3),
     ("# n=abc\n01\n", 1)],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(SampleFormatError) as exc:
        parse_sample_text(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_header_and_empty():
    with pytest.raises(SampleFormatError):
        parse_sample_text("01\n10\n")
    with pytest.raises(EmptyInputError):
        parse_sample_text("# n=2\n")


def test_write_empty_rejected(tmp_path):
    with pytest.raises(EmptyInputError):
        write_samples(SampleSet(2, []), tmp_path / "x.txt")


def test_format_exact_bytes():
    s = SampleSet(3, [1, 6], source="ideal", seed=4, batches=(0, 1), circuit="c.json")
    assert format_samples(s) == (
        "# n=3\n# source=ideal\n# ordered=true\n# seed=4\n# batches=0,1\n# circuit=c.json\n100\n011\n"
    )


@settings(max_examples=50, deadline=None)
@given(
    st.integers(1, 24),
    st.lists(st.integers(0, 2**24 - 1), min_size=1, max_size=50),
    st.sampled_from(["", "ideal", "device dump"]),
    st.one_of(st.none(), st.integers(0, 2**40)),
    st.booleans(),
)
def test_sample_round_trip(n, values, source, seed, ordered):
    vals = [v % (1 << n) for v in values]
    batches = tuple(sorted({0, len(vals) // 2}))
    s = SampleSet(n, vals, source=source, seed=seed, batches=batches, ordered=ordered)
    assert parse_sample_text(format_samples(s)) == s


def test_write_is_byte_stable(tmp_path):
    s = SampleSet(5, np.arange(32), source="x", seed=1)
    write_samples(s, tmp_path / "a.txt")
    write_samples(s, tmp_path / "b.txt")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()
    assert parse_samples(tmp_path / "a.txt") == s


def test_import_delimited(tmp_path):
    p = tmp_path / "dump.csv"
    p.write_text("shot,q0,q1,q2\n0,1,0,1\n1,0,0,1\n")
    s = import_delimited(p, 3, columns=[1, 2, 3], skip_rows=1, source="dev")
    assert list(s.samples) == [5, 4] and s.source == "dev"
    q = tmp_path / "strings.tsv"
    q.write_text("a\t110\nb\t011\n")
    s = import_delimited(q, 3, columns=[1], delimiter="\t")
    assert list(s.samples) == [3, 6]
    bad = tmp_path / "bad.csv"
    bad.write_text("1,0\n1,2\n")
    with pytest.raises(SampleFormatError) as exc:
        import_delimited(bad, 2)
    assert exc.value.line == 2


def test_circuit_round_trip(tmp_path):
    for gs in (None, GateSetConfig(single=(G.H, "t"), two=G.fsim(0.4, 0.1))):
        c = generate_random_circuit(3, 4, 9, gateset=gs, seed=5)
        write_circuit(c, tmp_path / "c.json")
        back = parse_circuit(tmp_path / "c.json")
        assert back == c
        assert back.seed == 5


def test_circuit_depth_zero(tmp_path):
    c = generate_random_circuit(2, 2, 0, seed=0)
    write_circuit(c, tmp_path / "c.json")
    assert parse_circuit(tmp_path / "c.json").gate_count() == 0


def _write_doc(tmp_path, doc):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    return path


def test_circuit_rejects_non_unitary(tmp_path):
    doc = circuit_to_dict(QuantumCircuit(1, 2))
    doc["layers"] = [{"kind": "single", "gates": [{"qubits": [0], "matrix": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]}]}]
    with pytest.raises(NonUnitaryGateError):
        parse_circuit(_write_doc(tmp_path, doc))


@pytest.mark.parametrize(
    "layers",
    [
        [{"kind": "two", "gates": [{"qubits": [0, 1], "name": "cz"}, {"qubits": [1, 2], "name": "cz"}]}],
        [{"kind": "two", "gates": [{"qubits": [0, 2], "name": "cz"}]}],
        [{"kind": "three", "gates": []}],
        [{"kind": "single", "gates": [{"qubits": [0], "name": "nope"}]}],
        [{"kind": "single", "gates": [{"qubits": [0]}]}],
        [{"kind": "single", "gates": [{"qubits": [0, 1], "name": "h"}]}],
        [{"kind": "single", "gates": [{"qubits": [0], "matrix": "identity"}]}],
    ],
)
def test_circuit_rejects_malformed(tmp_path, layers):
    doc = {"rows": 1, "cols": 3, "layers": layers}
    with pytest.raises(ValueError):
        parse_circuit(_write_doc(tmp_path, doc))


def test_circuit_rejects_bad_documents(tmp_path):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    with pytest.raises(CircuitFormatError):
        parse_circuit(p)
    with pytest.raises(CircuitFormatError):
        parse_circuit(_write_doc(tmp_path, {"rows": 2}))
    with pytest.raises(CircuitFormatError):
        parse_circuit(_write_doc(tmp_path, {"rows": 2, "cols": 2, "n": 5, "layers": []}))


def test_spectrum_csv(tmp_path):
    prof = DegreeProfile(4, [1.0, 4.0, 6.0, 4.0, 1.0])
    emit_spectrum_csv(prof, tmp_path / "s.csv")
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert lines[0] == "degree,weight" and len(lines) == 6
    est = DegreeProfile(4, [1.0, 0.1, 0.2, 0.0, 0.0], [0.0, 0.01, 0.02, 0.01, 0.01])
    emit_spectrum_csv(est, tmp_path / "r.csv", ref=prof)
    lines = (tmp_path / "r.csv").read_text().splitlines()
    assert lines[0] == "degree,weight,stderr,ratio"
    assert lines[2] == "1,0.1,0.01,0.025"
    back = read_spectrum_csv(tmp_path / "r.csv")
    assert np.array_equal(back.weights, est.weights) and np.array_equal(back.stderr, est.stderr)


def test_report_values_exact(tmp_path):
    class Fake:
        def to_dict(self):
            return {"p_value": 0.1 + 0.2, "B": 999}

    doc = emit_report(tmp_path / "r.json", {"config_hash": config_hash({"a": 1})}, stationarity=Fake())
    back = json.loads((tmp_path / "r.json").read_text())
    assert back == doc
    assert back["stationarity"]["p_value"] == 0.1 + 0.2
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})
