"""Text formats: sample streams, circuits, spectrum CSV and JSON reports.

Sample file::

    # n=3
    # source=trajectories
    # seed=7
    # batches=0,500
    010
    111

Character ``i`` of a data line is bit ``i`` (qubit ``i``). Stream order is
file order. Unknown ``#`` lines are ignored.
"""
import csv
import hashlib
import json

import numpy as np

from .core import EmptyInputError, SampleSet
from .qsim.circuit import Gate, Layer, QuantumCircuit
from .qsim import gates as G
from .walsh import DegreeProfile

CIRCUIT_FORMAT = "nisqwalsh.circuit/1"
REPORT_FORMAT = "nisqwalsh.report/1"


class SampleFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class CircuitFormatError(ValueError):
    pass


def _parse_header(line, header, lineno):
    body = line[1:].strip()
    if "=" not in body:
        return
    key, value = (part.strip() for part in body.split("=", 1))
    try:
        if key == "n":
            header["n"] = int(value)
        elif key == "seed":
            header["seed"] = int(value) if value else None
        elif key == "batches":
            header["batches"] = tuple(int(v) for v in value.split(",") if v.strip())
        elif key == "ordered":
            header["ordered"] = value.lower() in ("1", "true", "yes")
        elif key in ("source", "circuit"):
            header[key] = value
    except ValueError:
        raise SampleFormatError(f"malformed header value for {key!r}", lineno) from None


def parse_sample_text(text):
    header = {}
    data, linenos = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            _parse_header(line, header, lineno)
        else:
            data.append(line.rstrip("\r"))
            linenos.append(lineno)
    if "n" not in header:
        raise SampleFormatError("missing '# n=<int>' header")
    n = header["n"]
    if not data:
        raise EmptyInputError("empty input")
    allowed = set("01")
    for line, lineno in zip(data, linenos):
        if len(line) != n or not set(line) <= allowed:
            bad = set(line) - allowed
            if bad:
                raise SampleFormatError(f"invalid character {sorted(bad)[0]!r}, expected 0/1", lineno)
            raise SampleFormatError(f"expected {n} bits, found {len(line)}", lineno)
    bits = np.frombuffer("".join(data).encode("ascii"), dtype=np.uint8).reshape(len(data), n) - 48
    samples = bits.astype(np.int64) @ (np.int64(1) << np.arange(n, dtype=np.int64))
    return SampleSet(
        n,
        samples,
        source=header.get("source", ""),
        seed=header.get("seed"),
        batches=header.get("batches", ()),
        circuit=header.get("circuit"),
        ordered=header.get("ordered", True),
    )


def parse_samples(path):
    with open(path, encoding="ascii", newline="") as fh:
        return parse_sample_text(fh.read())


def format_samples(s):
    if len(s) == 0:
        raise EmptyInputError("sample file must hold at least one sample")
    lines = [f"# n={s.n}"]
    if s.source:
        lines.append(f"# source={s.source}")
    lines.append(f"# ordered={'true' if s.ordered else 'false'}")
    if s.seed is not None:
        lines.append(f"# seed={s.seed}")
    if s.batches:
        lines.append("# batches=" + ",".join(str(b) for b in s.batches))
    if s.circuit:
        lines.append(f"# circuit={s.circuit}")
    bits = ((s.samples[:, None] >> np.arange(s.n)) & 1).astype(np.uint8) + 48
    rows = np.concatenate([bits, np.full((len(s), 1), 10, dtype=np.uint8)], axis=1)
    return "\n".join(lines) + "\n" + rows.tobytes().decode("ascii")


def write_samples(s, path):
    text = format_samples(s)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)


def import_delimited(path, n, columns=None, delimiter=",", skip_rows=0, source=None):
    """Convert a third-party table (one sample per row) into a :class:`SampleSet`.

    ``columns[i]`` is the table column holding bit ``i``; by default the
    first ``n`` columns in order. A single column holding an ``n``-character
    0/1 string is accepted when ``columns`` has one entry and ``n > 1``.
    """
    columns = list(range(n)) if columns is None else list(columns)
    samples = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter=delimiter), start=1):
            if lineno <= skip_rows or not row:
                continue
            try:
                cells = [row[c].strip() for c in columns]
            except IndexError:
                raise SampleFormatError("row has too few columns", lineno) from None
            text = cells[0] if len(cells) == 1 and n > 1 else "".join(cells)
            if len(text) != n or set(text) - set("01"):
                raise SampleFormatError(f"cannot read {n} bits from {cells!r}", lineno)
            samples.append(text)
    if not samples:
        raise EmptyInputError("empty input")
    return SampleSet.from_strings(samples, source=source or str(path))


def _matrix_to_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_json(rows, where):
    try:
        m = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    except (TypeError, ValueError):
        raise CircuitFormatError(f"{where}: matrix must be rows of [re, im] pairs") from None
    return m


def circuit_to_dict(c):
    layers = []
    for layer in c.layers:
        gates = []
        for g in layer.gates:
            entry = {"qubits": list(g.qubits)}
            arity = len(g.qubits)
            known = (G.SINGLE if arity == 1 else G.TWO).get(g.name or "")
            if known is not None and np.array_equal(known, g.matrix):
                entry["name"] = g.name
            else:
                entry["matrix"] = _matrix_to_json(g.matrix)
                if g.name:
                    entry["name"] = g.name
            gates.append(entry)
        layers.append({"kind": layer.kind, "gates": gates})
    return {
        "format": CIRCUIT_FORMAT,
        "n": c.n,
        "rows": c.rows,
        "cols": c.cols,
        "gateset": c.gateset,
        "seed": c.seed,
        "layers": layers,
    }


def circuit_from_dict(doc):
    if not isinstance(doc, dict):
        raise CircuitFormatError("circuit document must be a JSON object")
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        raw_layers = doc["layers"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CircuitFormatError(f"missing or malformed field: {exc}") from None
    if "n" in doc and int(doc["n"]) != rows * cols:
        raise CircuitFormatError(f"n={doc['n']} does not equal rows*cols={rows * cols}")
    layers = []
    for li, raw in enumerate(raw_layers):
        kind = raw.get("kind") if isinstance(raw, dict) else None
        if kind not in ("single", "two"):
            raise CircuitFormatError(f"layer {li}: kind must be 'single' or 'two'")
        gates = []
        for gi, entry in enumerate(raw.get("gates", [])):
            where = f"layer {li} gate {gi}"
            qubits = entry.get("qubits")
            if not isinstance(qubits, list) or len(qubits) != (1 if kind == "single" else 2):
                raise CircuitFormatError(f"{where}: wrong qubit list {qubits!r}")
            name = entry.get("name")
            if "matrix" in entry:
                m = _matrix_from_json(entry["matrix"], where)
                G.check_unitary(m, where)
            elif name:
                try:
                    m = G.lookup(name, len(qubits))
                except ValueError as exc:
                    raise CircuitFormatError(f"{where}: {exc}") from None
            else:
                raise CircuitFormatError(f"{where}: needs a 'name' or a 'matrix'")
            try:
                gates.append(Gate(tuple(qubits), m, name))
            except ValueError as exc:
                raise CircuitFormatError(f"{where}: {exc}") from None
        layers.append(Layer(kind, gates))
    return QuantumCircuit(rows, cols, layers, gateset=doc.get("gateset"), seed=doc.get("seed"))


def dumps_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_circuit(c, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(circuit_to_dict(c)))


def parse_circuit(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CircuitFormatError(f"{path}: not valid JSON ({exc})") from None
    return circuit_from_dict(doc)


def spectrum_rows(profile, ref=None):
    """CSV rows for a degree profile; ``ratio`` is ``weight / ref weight``."""
    header = ["degree", "weight"]
    if profile.stderr is not None:
        header.append("stderr")
    if ref is not None:
        header.append("ratio")
    rows = [header]
    for d, w in enumerate(profile.weights):
        row = [str(d), repr(float(w))]
        if profile.stderr is not None:
            row.append(repr(float(profile.stderr[d])))
        if ref is not None:
            rw = ref.weights[d] if d < ref.weights.shape[0] else 0.0
            row.append(repr(float(w / rw)) if rw > 0 else "nan")
        rows.append(row)
    return rows


def emit_spectrum_csv(profile, path, ref=None):
    with open(path, "w", newline="", encoding="ascii") as fh:
        csv.writer(fh, lineterminator="\n").writerows(spectrum_rows(profile, ref))


def read_spectrum_csv(path, n=None):
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header[:2] != ["degree", "weight"]:
        raise ValueError(f"{path}: not a spectrum CSV")
    cols = {name: i for i, name in enumerate(header)}
    weights = [float(r[1]) for r in body]
    stderr = [float(r[cols["stderr"]]) for r in body] if "stderr" in cols else None
    return DegreeProfile(len(weights) - 1 if n is None else n, weights, stderr)


def config_hash(config):
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def emit_report(path, provenance, **sections):
    """Write a JSON report; each section is a dict or has ``to_dict()``."""
    doc = {"format": REPORT_FORMAT, "provenance": provenance}
    for name, value in sections.items():
        if value is not None:
            doc[name] = value.to_dict() if hasattr(value, "to_dict") else value
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(doc))
    return doc
