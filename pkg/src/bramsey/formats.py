"""Text formats for witnesses and certificates.

Witness file::

    bramsey-witness v1; 7 56 2 6
    # optional note lines
    1 2 3 4 5 6 7 8 9 10 11
    ...

one line per X-vertex holding its red Y-indices, 1-based; ``-`` marks an
empty row.  A certificate is ``key: value`` lines in a fixed order, followed
by an embedded witness when the status is NotArrow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .core import Coloring, ProblemSpec, build_coloring, verify
from .errors import BramseyError, IndexOutOfRange, WitnessFormatError
from .search import SearchOutcome, Status

WITNESS_MAGIC = "bramsey-witness v1"
CERT_MAGIC = "bramsey-certificate v1"
SCHEMA_VERSION = 1


@dataclass
class WitnessFile:
    spec: ProblemSpec
    rows: list[list[int]]  # 1-based
    note: str = ""
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_coloring(cls, coloring: Coloring, spec: ProblemSpec, note: str = "") -> "WitnessFile":
        return cls(spec, coloring.to_rows(one_based=True), note)

    def coloring(self, n: Optional[int] = None) -> Coloring:
        """Build the coloring, optionally on a different column count ``n``."""
        n = self.spec.n if n is None else n
        for i, row in enumerate(self.rows, start=1):
            bad = [y for y in row if not 1 <= y <= n]
            if bad:
                raise IndexOutOfRange(f"row {i} lists y_{bad[0]}, outside 1..{n}")
        return build_coloring(self.spec.m, n, [[y - 1 for y in row] for row in self.rows])

    def dumps(self) -> str:
        sp = self.spec
        lines = [f"{WITNESS_MAGIC}; {sp.m} {sp.n} {sp.a} {sp.s}"]
        lines.extend(f"# {part}" for part in self.note.splitlines() if part)
        lines.extend(" ".join(map(str, row)) if row else "-" for row in self.rows)
        return "\n".join(lines) + "\n"


def _parse_witness_lines(lines: list[str]) -> WitnessFile:
    if not lines or not lines[0].startswith(WITNESS_MAGIC):
        raise WitnessFormatError(f"missing '{WITNESS_MAGIC}' header")
    try:
        m, n, a, s = map(int, lines[0].split(";", 1)[1].split())
    except ValueError as exc:
        raise WitnessFormatError(f"bad witness header {lines[0]!r}") from exc
    spec = ProblemSpec(m, n, a, s)
    notes = []
    rows = []
    for line in lines[1:]:
        stripped = line.strip()
        if stripped.startswith("#"):
            notes.append(stripped[1:].strip())
            continue
        if not stripped:
            continue
        if stripped == "-":
            rows.append([])
            continue
        try:
            rows.append([int(tok) for tok in stripped.split()])
        except ValueError as exc:
            raise WitnessFormatError(f"bad row {stripped!r}") from exc
    if len(rows) != m:
        raise WitnessFormatError(f"header says m={m} but {len(rows)} rows follow")
    return WitnessFile(spec, rows, "\n".join(notes))


def loads_witness(text: str) -> WitnessFile:
    return _parse_witness_lines(text.splitlines())


def load_witness(path: Union[str, Path]) -> WitnessFile:
    return loads_witness(Path(path).read_text())


def save_witness(wf: WitnessFile, path: Union[str, Path]) -> None:
    Path(path).write_text(wf.dumps())


@dataclass
class Certificate:
    spec: ProblemSpec
    status: Status
    engine: str
    nodes: int = 0
    elapsed: float = 0.0
    prunes: dict[str, int] = field(default_factory=dict)
    witness: Optional[WitnessFile] = None
    trust: str = "self-verified"
    reverified: Optional[bool] = None  # set on load for NotArrow

    @classmethod
    def from_outcome(cls, outcome: SearchOutcome) -> "Certificate":
        witness = None
        if outcome.witness is not None:
            witness = WitnessFile.from_coloring(outcome.witness, outcome.spec,
                                                note=f"found by {outcome.engine}")
        trust = "solver-trusted" if outcome.engine == "cegar" and \
            outcome.status is Status.ARROW else "self-verified"
        return cls(outcome.spec, outcome.status, outcome.engine, outcome.stats.nodes,
                   outcome.stats.elapsed, dict(sorted(outcome.stats.prunes.items())),
                   witness, trust)

    def dumps(self) -> str:
        sp = self.spec
        lines = [
            CERT_MAGIC,
            f"spec: {sp.m} {sp.n} {sp.a} {sp.s}",
            f"status: {self.status.value}",
            f"engine: {self.engine}",
            f"trust: {self.trust}",
            f"nodes: {self.nodes}",
            f"elapsed: {self.elapsed:.6f}",
        ]
        lines.extend(f"prune.{name}: {count}" for name, count in sorted(self.prunes.items()))
        if self.witness is not None:
            lines.append("witness:")
            lines.append(self.witness.dumps().rstrip("\n"))
        return "\n".join(lines) + "\n"


def loads_certificate(text: str) -> Certificate:
    """Parse a certificate; NotArrow witnesses are re-verified (see ``reverified``)."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != CERT_MAGIC:
        raise WitnessFormatError(f"missing '{CERT_MAGIC}' header")
    fields: dict[str, str] = {}
    prunes: dict[str, int] = {}
    witness = None
    for idx, line in enumerate(lines[1:], start=1):
        if line.strip() == "witness:":
            witness = _parse_witness_lines(lines[idx + 1:])
            break
        key, sep, value = line.partition(":")
        if not sep:
            raise WitnessFormatError(f"bad certificate line {line!r}")
        key, value = key.strip(), value.strip()
        if key.startswith("prune."):
            prunes[key[len("prune."):]] = int(value)
        else:
            fields[key] = value
    try:
        spec = ProblemSpec(*map(int, fields["spec"].split()))
        cert = Certificate(spec, Status(fields["status"]), fields["engine"],
                           int(fields.get("nodes", 0)), float(fields.get("elapsed", 0)),
                           prunes, witness, fields.get("trust", "self-verified"))
    except (KeyError, ValueError) as exc:
        raise WitnessFormatError(f"incomplete certificate: {exc}") from exc
    if cert.status is Status.NOT_ARROW:
        cert.reverified = _reverify(cert)
    return cert


def _reverify(cert: Certificate) -> bool:
    if cert.witness is None or cert.witness.spec != cert.spec:
        return False
    try:
        return verify(cert.witness.coloring(), cert.spec).good
    except BramseyError:
        return False


def load_certificate(path: Union[str, Path]) -> Certificate:
    return loads_certificate(Path(path).read_text())


def save_certificate(cert: Certificate, path: Union[str, Path]) -> None:
    Path(path).write_text(cert.dumps())
