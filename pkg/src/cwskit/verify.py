"""Independent verification of CWS codes.

Two routes that must agree: a combinatorial detection check driven by the
induced error patterns, and a dense Knill-Laflamme oracle that builds the
basis states Z^c |G> explicitly and checks <b_i| E |b_j> = lambda_E
delta_ij.  The oracle recomputes graph-state signs with plain NumPy and
touches none of the pattern machinery, so the two sides stay independent.

All amplitudes involved are +-2^(-n/2), so the oracle works on integer
scaled vectors and every comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .errormap import ErrorSet, cl_map, error_set, explicit_error_set, _weight_errors
from .gf2 import BitString, ClassicalCode, PauliOp, parity
from .graphs import Graph, parse_graph_file, write_graph_file

MAX_ORACLE_N = 12


@dataclass(frozen=True)
class CWSCode:
    """Standard-form CWS code: a graph plus a classical code containing 0^n."""

    graph: Graph
    code: ClassicalCode
    claimed_distance: int | None = None

    def __post_init__(self) -> None:
        if self.code.n != self.graph.n:
            raise ValueError("codeword length does not match graph size")
        if not self.code.contains_zero():
            raise ValueError("standard form requires the all-zeros codeword")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def dimension(self) -> int:
        return self.code.size


@dataclass(frozen=True)
class Witness:
    """A concrete violation: two codewords joined by an induced pattern, or a
    single codeword anticommuting with a trivially-mapping error."""

    error: PauliOp
    pair: tuple[BitString, ...]

    def recheck(self, q: CWSCode) -> bool:
        pattern = cl_map(self.error, q.graph)
        if len(self.pair) == 2:
            a, b = self.pair
            return (a ^ b).value == pattern.value
        (c,) = self.pair
        return pattern.value == 0 and parity(c.value & self.error.u) == 1


@dataclass(frozen=True)
class VerificationReport:
    detects: bool
    degenerate: bool
    witness: Witness | None
    oracle_distance: int | None = None


def detection_check(q: CWSCode, errors: ErrorSet) -> VerificationReport:
    """Combinatorial detection conditions on the induced error patterns.

    Detects iff no pattern equals the XOR of two codewords and every
    trivially-mapping error commutes with all codeword operators."""
    if errors.n != q.n:
        raise ValueError("error set does not match code size")
    words = q.code.values
    if not len(errors):
        return VerificationReport(True, False, None)

    u_arr, v_arr = errors.uv_arrays()
    patterns = kernels.cl_patterns(u_arr, v_arr, q.graph.rows_array())
    first_error_for: dict[int, int] = {}
    for idx, p in enumerate(patterns):
        first_error_for.setdefault(int(p), idx)
    degenerate = 0 in first_error_for

    best_idx: int | None = None
    best_pair: tuple[BitString, ...] | None = None

    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            idx = first_error_for.get(words[i] ^ words[j])
            if idx is not None and (best_idx is None or idx < best_idx):
                best_idx = idx
                best_pair = (BitString(q.n, words[i]), BitString(q.n, words[j]))

    if degenerate:
        for idx, p in enumerate(patterns):
            if best_idx is not None and idx >= best_idx:
                break
            if int(p) != 0:
                continue
            u = int(u_arr[idx])
            for c in words:
                if parity(c & u):
                    best_idx = idx
                    best_pair = (BitString(q.n, c),)
                    break

    if best_idx is None:
        return VerificationReport(True, degenerate, None)
    witness = Witness(errors.paulis[best_idx], best_pair)
    return VerificationReport(False, degenerate, witness)


# ---------------------------------------------------------------------------
# dense oracle

def _graph_sign_table(g: Graph) -> np.ndarray:
    """(-1)^q(x) for all x, recomputed here with plain NumPy."""
    x = np.arange(1 << g.n, dtype=np.int64)
    q = np.zeros(1 << g.n, dtype=np.int64)
    for i, j in [(a, b) for a in range(g.n) for b in range(a + 1, g.n) if g.has_edge(a, b)]:
        q ^= (x >> i) & (x >> j) & 1
    return 1 - 2 * q


def _basis_matrix(q: CWSCode) -> np.ndarray:
    """Rows are the integer-scaled vectors of Z^c |G> over the codewords."""
    signs = _graph_sign_table(q.graph)
    x = np.arange(1 << q.n, dtype=np.int64)
    rows = []
    for c in q.code.values:
        z_phase = 1 - 2 * (np.bitwise_count(x & np.int64(c)) & 1).astype(np.int64)
        rows.append(signs * z_phase)
    return np.array(rows, dtype=np.int64)


def _kl_error_ok(basis: np.ndarray, x: np.ndarray, u: int, v: int) -> bool:
    """Check <b_i|E|b_j> = lambda delta_ij for E with supports (u, v)."""
    y = 1 - 2 * (np.bitwise_count(x & np.int64(v)) & 1).astype(np.int64)
    permuted = basis[:, x ^ np.int64(u)]
    m = permuted @ (basis * y).T
    off = m - np.diag(np.diag(m))
    if np.any(off != 0):
        return False
    diag = np.diag(m)
    return bool(np.all(diag == diag[0]))


def kl_oracle(q: CWSCode, d: int) -> int:
    """Largest d' <= d such that every Pauli error of weight < d' passes the
    Knill-Laflamme detection condition on the explicit basis vectors."""
    if q.n > MAX_ORACLE_N:
        raise ValueError(f"kl_oracle supports n <= {MAX_ORACLE_N}")
    if not 1 <= d <= q.n + 1:
        raise ValueError(f"distance must be in 1..{q.n + 1}")
    basis = _basis_matrix(q)
    x = np.arange(1 << q.n, dtype=np.int64)
    passed = 0
    for w in range(1, d):
        ok = all(
            _kl_error_ok(basis, x, e.u, e.v) for e in _weight_errors(q.n, w)
        )
        if not ok:
            break
        passed = w
    return passed + 1


def code_distance(q: CWSCode, cross_check: bool = True) -> int:
    """Largest d such that all errors of weight < d pass detection_check.

    A one-dimensional code detects everything vacuously and reports n+1.
    When cross_check is set (requires n <= 12) the result is re-derived from
    kl_oracle and a mismatch raises."""
    passed = 0
    for w in range(1, q.n + 1):
        errs = explicit_error_set(q.n, _weight_errors(q.n, w))
        if not detection_check(q, errs).detects:
            break
        passed = w
    distance = passed + 1
    if cross_check:
        if q.n > MAX_ORACLE_N:
            raise ValueError("cross_check requires n <= 12; pass cross_check=False")
        oracle = kl_oracle(q, min(distance + 1, q.n + 1))
        if oracle != distance:
            raise RuntimeError(
                f"detection distance {distance} disagrees with oracle {oracle}"
            )
    return distance


def verification_report(q: CWSCode, d: int) -> VerificationReport:
    """Detection check at distance d with the oracle distance attached."""
    report = detection_check(q, error_set(q.n, d))
    oracle = kl_oracle(q, d) if q.n <= MAX_ORACLE_N else None
    return VerificationReport(report.detects, report.degenerate, report.witness, oracle)


# ---------------------------------------------------------------------------
# stabilizer-basis variant of the oracle (used by the conversion tests)

def stabilizer_state_vector(
    generators: Sequence[PauliOp], signs: int = 0
) -> np.ndarray:
    """State stabilized by <(-1)^(signs_i) g_i>, as a complex vector.

    Expands the rank-one projector 2^-n sum_a (-1)^(signs.a) g^a applied to
    the first computational basis state with nonzero image."""
    n = generators[0].n
    size = 1 << n
    elements = [PauliOp.identity(n)]
    for g in generators:
        elements.extend(e @ g for e in list(elements))
    signs_of = []
    for a in range(1 << len(generators)):
        signs_of.append(-1.0 if parity(signs & a) else 1.0)
    # after the doubling loop, elements[a] is the product over subset bits a
    for seed in range(size):
        vec = np.zeros(size, dtype=np.complex128)
        for a, elem in enumerate(elements):
            target, coeff = elem.apply_to_basis(seed)
            vec[target] += signs_of[a] * coeff
        norm = np.linalg.norm(vec)
        if norm > 1e-9:
            return vec / norm
    raise RuntimeError("projector annihilated every basis state")


def kl_oracle_states(states: Sequence[np.ndarray], d: int) -> int:
    """Knill-Laflamme detection over explicit (complex) basis vectors."""
    dim = states[0].shape[0]
    n = dim.bit_length() - 1
    basis = np.array(states)
    x = np.arange(dim, dtype=np.int64)
    passed = 0
    for w in range(1, d):
        ok = True
        for e in _weight_errors(n, w):
            y = 1 - 2 * (np.bitwise_count(x & np.int64(e.v)) & 1).astype(np.int64)
            coeff = 1j ** e.phase
            action = coeff * (basis * y)[:, x ^ np.int64(e.u)]
            m = np.conj(basis) @ action.T
            off = m - np.diag(np.diag(m))
            if np.max(np.abs(off)) > 1e-9:
                ok = False
                break
            diag = np.diag(m)
            if np.max(np.abs(diag - diag[0])) > 1e-9:
                ok = False
                break
        if not ok:
            break
        passed = w
    return passed + 1


# ---------------------------------------------------------------------------
# code file format and report rendering

def parse_code_file(path: Path) -> CWSCode:
    lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
    if len(lines) < 3 or not lines[0].startswith("n=") or not lines[1].startswith("graph="):
        raise ValueError("code file needs 'n=', 'graph=', then codewords")
    n = int(lines[0].split("=", 1)[1])
    graph_ref = lines[1].split("=", 1)[1]
    graph_path = (path.parent / graph_ref).resolve()
    graph = parse_graph_file(graph_path.read_text())
    if graph.n != n:
        raise ValueError("graph file size does not match header")
    code = ClassicalCode.from_texts(lines[2:])
    return CWSCode(graph, code)


def write_code_file(path: Path, q: CWSCode, graph_filename: str) -> None:
    (path.parent / graph_filename).write_text(write_graph_file(q.graph))
    lines = [f"n={q.n}", f"graph={graph_filename}"]
    lines.extend(str(w) for w in q.code.sorted().words)
    path.write_text("\n".join(lines) + "\n")


def report_lines(report: VerificationReport, distance: int | None = None) -> str:
    lines = [
        f"detects={'true' if report.detects else 'false'}",
        f"degenerate={'true' if report.degenerate else 'false'}",
    ]
    if distance is not None:
        lines.append(f"distance={distance}")
    if report.oracle_distance is not None:
        lines.append(f"oracle_distance={report.oracle_distance}")
    if report.witness is not None:
        lines.append(f"witness_error={report.witness.error}")
        lines.append("witness_pair=" + ",".join(str(b) for b in report.witness.pair))
    return "\n".join(lines) + "\n"
