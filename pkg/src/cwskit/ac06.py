"""Boolean-function codes and their conversion to standard-form CWS codes.

The input data is a Boolean function f plus an n x 2n binary matrix whose
rows are independent and pairwise symplectically orthogonal.  The rows,
read as X-half then Z-half, are Hermitian Pauli generators of a stabilizer
state; the complements of f's support strings form a classical code whose
bits record commutation sign patterns.  The chain to standard form is:

    rows -> stabilizer + code  ->  (single-qubit Cliffords) graph state
         ->  (generator change R) graph + code . R

Single-qubit Clifford moves leave the code untouched; only the generator
change transforms it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .gf2 import (
    BitString,
    ClassicalCode,
    GF2Matrix,
    PauliOp,
    parity,
    solve_linear,
)
from .graphs import Graph
from .verify import CWSCode

MAX_ANF_N = 16
MAX_SD_N = 16


@dataclass(frozen=True)
class BooleanFunction:
    """Boolean function given by its support (the strings where f = 1)."""

    n: int
    support: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(set(self.support)) != list(self.support):
            raise ValueError("support must be strictly ascending and distinct")
        if self.support and not 0 <= self.support[-1] < (1 << self.n):
            raise ValueError("support string out of range")

    @classmethod
    def from_strings(cls, n: int, strings) -> "BooleanFunction":
        vals = sorted({s.value if isinstance(s, BitString) else int(s) for s in strings})
        return cls(n, tuple(vals))

    @classmethod
    def from_anf(cls, n: int, expr: str) -> "BooleanFunction":
        """Parse an XOR of products of literals, e.g. "v1v2v3 + v3v4v5".

        A literal is v<i> or ~v<i> (the negated variable); variables are
        numbered from 1 and v1 is bit 0."""
        if n > MAX_ANF_N:
            raise ValueError(f"ANF evaluation supports n <= {MAX_ANF_N}")
        terms = []
        for raw in expr.split("+"):
            raw = raw.strip()
            if not raw:
                raise ValueError("empty term in ANF expression")
            lits = re.findall(r"~?v\d+", raw)
            if "".join(lits).replace(" ", "") != raw.replace(" ", ""):
                raise ValueError(f"cannot parse term {raw!r}")
            term = []
            for lit in lits:
                neg = lit.startswith("~")
                idx = int(lit.lstrip("~v")) - 1
                if not 0 <= idx < n:
                    raise ValueError(f"variable out of range in {lit!r}")
                term.append((idx, neg))
            terms.append(term)
        support = []
        for c in range(1 << n):
            val = 0
            for term in terms:
                prod = 1
                for idx, neg in term:
                    bit = (c >> idx) & 1
                    if neg:
                        bit ^= 1
                    prod &= bit
                val ^= prod
            if val:
                support.append(c)
        return cls(n, tuple(support))

    @property
    def weight(self) -> int:
        return len(self.support)

    def evaluate(self, c: int) -> int:
        return 1 if c in self.support else 0

    def support_strings(self) -> tuple[BitString, ...]:
        return tuple(BitString(self.n, s) for s in self.support)


def cset(f: BooleanFunction) -> tuple[BitString, ...]:
    """Shifts a with support(f) and support(f) XOR a disjoint: the classical
    errors detectable by the support code."""
    if not f.support:
        raise ValueError("cset of the zero function is undefined")
    sup = set(f.support)
    out = [
        a
        for a in range(1 << f.n)
        if all((s ^ a) not in sup for s in sup)
    ]
    return tuple(BitString(f.n, a) for a in out)


# ---------------------------------------------------------------------------

def _row_to_pauli(row: int, n: int) -> PauliOp:
    u = row & ((1 << n) - 1)
    v = row >> n
    return PauliOp(n, u, v, (u & v).bit_count() % 4)


def _pauli_to_row(p: PauliOp) -> int:
    return p.u | (p.v << p.n)


@dataclass(frozen=True)
class StabilizerState:
    """n commuting, independent Hermitian Pauli generators with +1 signs."""

    generators: tuple[PauliOp, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValueError("stabilizer state needs at least one generator")
        n = self.generators[0].n
        if len(self.generators) != n or any(g.n != n for g in self.generators):
            raise ValueError("a stabilizer state needs exactly n generators on n qubits")
        for i, g in enumerate(self.generators):
            if g.hermitian_sign() != 1:
                raise ValueError(f"generator {i} does not have sign +1")
            for j in range(i + 1, n):
                if g.symplectic(self.generators[j]):
                    raise ValueError(f"generators {i} and {j} anticommute")
        rows = GF2Matrix(2 * n, tuple(_pauli_to_row(g) for g in self.generators))
        if rows.rank() != n:
            raise ValueError("generators are not independent")

    @property
    def n(self) -> int:
        return self.generators[0].n


@dataclass(frozen=True)
class AC06Data:
    """A Boolean function plus its n x 2n generator matrix [X-half | Z-half]."""

    f: BooleanFunction
    a: GF2Matrix

    def __post_init__(self) -> None:
        n = self.f.n
        if self.a.nrows != n or self.a.ncols != 2 * n:
            raise ValueError("matrix must be n x 2n")
        gens = [_row_to_pauli(r, n) for r in self.a.rows]
        for i in range(n):
            for j in range(i + 1, n):
                if gens[i].symplectic(gens[j]):
                    raise ValueError(
                        f"rows {i} and {j} are not symplectically orthogonal"
                    )
        if self.a.rank() != n:
            raise ValueError("matrix rows are not linearly independent")

    @property
    def n(self) -> int:
        return self.f.n

    def stabilizer(self) -> StabilizerState:
        return StabilizerState(tuple(_row_to_pauli(r, self.n) for r in self.a.rows))


@dataclass(frozen=True)
class AC06Conversion:
    stabilizer: StabilizerState
    code_unshifted: tuple[BitString, ...]
    shift: BitString
    code: ClassicalCode
    word_operators: tuple[PauliOp, ...]


def ac06_to_cws(data: AC06Data) -> AC06Conversion:
    """Stabilizer state, sign-pattern code, and word operators from (f, A).

    The code lists the complements of f's support strings, then is shifted
    by its minimum member so the all-zeros word is present.  Word operators
    are Paulis whose commutation pattern with the generators realises each
    codeword; they are found by solving the symplectic linear system."""
    if not data.f.support:
        raise ValueError("the zero function defines no code")
    n = data.n
    full = (1 << n) - 1
    stab = data.stabilizer()
    unshifted = [s ^ full for s in data.f.support]
    shift = min(unshifted)
    shifted = [c ^ shift for c in unshifted]
    code = ClassicalCode.from_ints(n, shifted)

    # sp(W, g_k) = c_k: unknown (a|b), row k of the system is (v_k | u_k).
    system = GF2Matrix(
        2 * n, tuple(g.v | (g.u << n) for g in stab.generators)
    )
    words = []
    for c in shifted:
        x = solve_linear(system, c)
        if x is None:
            raise RuntimeError("word-operator system is unexpectedly singular")
        words.append(_row_to_pauli(x, n))
    return AC06Conversion(
        stabilizer=stab,
        code_unshifted=tuple(BitString(n, c) for c in unshifted),
        shift=BitString(n, shift),
        code=code,
        word_operators=tuple(words),
    )


# ---------------------------------------------------------------------------
# reduction of a stabilizer state to graph form

@dataclass(frozen=True)
class LCRecord:
    """Per-qubit Clifford letters (applied left to right) plus the generator
    change matrix R; codes transform as c -> c . R."""

    letters: tuple[str, ...]
    generator_change: GF2Matrix


def _x_block_rank(rows: list[tuple[int, int]], n: int) -> int:
    m = GF2Matrix(n, tuple(u for u, _v in rows))
    return m.rank()


def _hadamard_set(uv: list[tuple[int, int]], n: int) -> list[int]:
    """Choose qubits to Hadamard so the X block becomes invertible."""
    # pivot analysis on [X | Z] with X columns preferred
    work = [u | (v << n) for u, v in uv]
    pivot_cols = []
    pivot_row = 0
    for col in range(2 * n):
        sel = None
        for r in range(pivot_row, len(work)):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        for r in range(len(work)):
            if r != pivot_row and (work[r] >> col) & 1:
                work[r] ^= work[pivot_row]
        pivot_cols.append(col)
        pivot_row += 1
    chosen = {col - n for col in pivot_cols if col >= n}

    def rank_with(swaps: set[int]) -> int:
        rows = []
        for u, v in uv:
            uu, vv = u, v
            for j in swaps:
                bu, bv = (uu >> j) & 1, (vv >> j) & 1
                uu = (uu & ~(1 << j)) | (bv << j)
                vv = (vv & ~(1 << j)) | (bu << j)
            rows.append((uu, vv))
        return _x_block_rank(rows, n)

    if rank_with(chosen) == n:
        return sorted(chosen)
    # greedy single toggles
    current = rank_with(chosen)
    progress = True
    while current < n and progress:
        progress = False
        for j in range(n):
            trial = set(chosen)
            trial.symmetric_difference_update({j})
            r = rank_with(trial)
            if r > current:
                chosen, current = trial, r
                progress = True
                break
    if current == n:
        return sorted(chosen)
    # exhaustive fallback; a full-rank swap set always exists for a valid state
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            if rank_with(set(combo)) == n:
                return list(combo)
    raise RuntimeError("no Hadamard set achieves a full-rank X block")


def stabilizer_to_graph(s: StabilizerState) -> tuple[Graph, LCRecord]:
    """Reduce to graph-state generators X_l Z^(row l) with +1 signs.

    Hadamards make the X block invertible, row operations (tracked in R)
    bring it to the identity, phase gates clear the adjacency diagonal, and
    a final Pauli-Z conjugation normalises the signs.  The single-qubit
    moves leave any attached classical code alone; only R acts on it."""
    n = s.n
    us = [g.u for g in s.generators]
    vs = [g.v for g in s.generators]
    phases = [g.phase for g in s.generators]
    letters = [""] * n

    for j in _hadamard_set(list(zip(us, vs)), n):
        letters[j] += "H"
        for i in range(n):
            bu, bv = (us[i] >> j) & 1, (vs[i] >> j) & 1
            if bu and bv:
                phases[i] = (phases[i] + 2) % 4
            us[i] = (us[i] & ~(1 << j)) | (bv << j)
            vs[i] = (vs[i] & ~(1 << j)) | (bu << j)

    # row-reduce the X block to the identity, composing actual generators
    mix = [1 << i for i in range(n)]  # mix[i]: new gen i as product of old
    for col in range(n):
        sel = None
        for r in range(col, n):
            if (us[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            raise RuntimeError("X block lost full rank during reduction")
        if sel != col:
            us[col], us[sel] = us[sel], us[col]
            vs[col], vs[sel] = vs[sel], vs[col]
            phases[col], phases[sel] = phases[sel], phases[col]
            mix[col], mix[sel] = mix[sel], mix[col]
        for r in range(n):
            if r != col and (us[r] >> col) & 1:
                phases[r] = (phases[r] + phases[col] + 2 * parity(vs[r] & us[col])) % 4
                us[r] ^= us[col]
                vs[r] ^= vs[col]
                mix[r] ^= mix[col]

    # clear the diagonal with phase gates (only generator j has X on qubit j)
    for j in range(n):
        if (vs[j] >> j) & 1:
            letters[j] += "S"
            vs[j] &= ~(1 << j)
            phases[j] = (phases[j] + 1) % 4

    # normalise signs by conjugating with Z^m
    for i in range(n):
        if phases[i] == 2:
            letters[i] += "Z"
            phases[i] = 0
        if phases[i] != 0:
            raise RuntimeError("generator sign did not normalise to +-1")

    rows = tuple(vs)
    graph = Graph(n, rows)

    r_matrix = GF2Matrix(n, tuple(mix)).transpose()
    return graph, LCRecord(tuple(letters), r_matrix)


def change_generators(r: GF2Matrix, c: ClassicalCode) -> ClassicalCode:
    """Transform codewords as row vectors under an invertible generator change."""
    if r.nrows != r.ncols:
        raise ValueError("generator change matrix must be square")
    if r.invert() is None:
        raise ValueError("generator change matrix is singular")
    return c.mul_matrix(r)


def regenerate_generators(
    s: StabilizerState, r: GF2Matrix
) -> tuple[PauliOp, ...]:
    """New generator list g'_i = product_j g_j^(R_ji), phases tracked."""
    n = s.n
    out = []
    for i in range(n):
        acc = PauliOp.identity(n)
        for j in range(n):
            if r.entry(j, i):
                acc = acc @ s.generators[j]
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class StandardFormResult:
    conversion: AC06Conversion
    graph: Graph
    lc_record: LCRecord
    cws: CWSCode


def ac06_to_standard_form(data: AC06Data) -> StandardFormResult:
    """Full chain: (f, A) to a standard-form CWS code (graph, code)."""
    conv = ac06_to_cws(data)
    graph, record = stabilizer_to_graph(conv.stabilizer)
    code = change_generators(record.generator_change, conv.code)
    cws = CWSCode(graph, code.sorted())
    return StandardFormResult(conv, graph, record, cws)


def cws_to_ac06(q: CWSCode) -> AC06Data:
    """Inverse direction: A = [I | adjacency], f supported on the codeword
    complements."""
    n = q.n
    full = (1 << n) - 1
    support = sorted(c ^ full for c in q.code.values)
    f = BooleanFunction(n, tuple(support))
    rows = tuple((1 << j) | (q.graph.rows[j] << n) for j in range(n))
    return AC06Data(f, GF2Matrix(2 * n, rows))


# ---------------------------------------------------------------------------
# degenerate-code constraint set

@dataclass(frozen=True)
class SdResult:
    elements: tuple[PauliOp, ...]
    rank: int
    generators: tuple[PauliOp, ...]


def compute_sd(s, d: int) -> SdResult:
    """All signed stabilizer elements of weight < d, their GF(2) rank r, and
    a generating set whose first r members span them (the rest lie outside).

    Accepts a StabilizerState or any commuting independent generator list
    (a code's stabilizer group).  Codewords of a degenerate code built on s
    must vanish on the first r sign coordinates."""
    gens = s.generators if isinstance(s, StabilizerState) else tuple(s)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    k = len(gens)
    if k > MAX_SD_N:
        raise ValueError(f"compute_sd enumerates 2^k elements; k <= {MAX_SD_N}")
    for i, g in enumerate(gens):
        if g.n != n or g.hermitian_sign() is None:
            raise ValueError(f"generator {i} is not a Hermitian n-qubit Pauli")
        for h in gens[i + 1 :]:
            if g.symplectic(h):
                raise ValueError("generators must commute")
    if GF2Matrix(2 * n, tuple(_pauli_to_row(g) for g in gens)).rank() != k:
        raise ValueError("generators are not independent")
    elems: list[PauliOp] = [PauliOp.identity(n)]
    for a in range(1, 1 << k):
        low = (a & -a).bit_length() - 1
        elems.append(elems[a & (a - 1)] @ gens[low])

    low_weight = [e for e in elems[1:] if e.weight() < d]

    def row(p: PauliOp) -> int:
        return _pauli_to_row(p)

    chosen: list[PauliOp] = []
    rows: list[int] = []
    rank = 0
    for e in low_weight:
        trial = rows + [row(e)]
        r = GF2Matrix(2 * n, tuple(trial)).rank()
        if r > rank:
            chosen.append(e)
            rows.append(row(e))
            rank = r

    completed = list(chosen)
    for g in gens:
        trial = rows + [row(g)]
        r = GF2Matrix(2 * n, tuple(trial)).rank()
        if r > len(rows):
            completed.append(g)
            rows.append(row(g))
    if len(completed) != k:
        raise RuntimeError("generator completion failed")
    return SdResult(tuple(low_weight), rank, tuple(completed))


# ---------------------------------------------------------------------------
# file format

def parse_ac06_file(text: str) -> AC06Data:
    lines = [ln.rstrip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("AC06 file must start with 'n=<n>'")
    n = int(lines[0].split("=", 1)[1])
    try:
        a_at = lines.index("A:")
        f_at = lines.index("f:")
    except ValueError as exc:
        raise ValueError("AC06 file needs 'A:' and 'f:' blocks") from exc
    if not a_at < f_at:
        raise ValueError("'A:' block must precede 'f:'")
    a_lines = lines[a_at + 1 : f_at]
    if len(a_lines) != n:
        raise ValueError(f"expected {n} matrix rows, got {len(a_lines)}")
    rows = []
    for ln in a_lines:
        bits = ln.replace(" ", "")
        if len(bits) != 2 * n or any(c not in "01" for c in bits):
            raise ValueError(f"bad matrix row: {ln!r}")
        rows.append(sum(1 << i for i, c in enumerate(bits) if c == "1"))
    f_lines = [ln.strip() for ln in lines[f_at + 1 :]]
    if not f_lines:
        raise ValueError("empty f block")
    if all(set(ln) <= {"0", "1"} for ln in f_lines):
        support = [BitString.from_text(ln).value for ln in f_lines]
        f = BooleanFunction(n, tuple(sorted(set(support))))
    elif len(f_lines) == 1:
        f = BooleanFunction.from_anf(n, f_lines[0])
    else:
        raise ValueError("f block must be support strings or one ANF line")
    return AC06Data(f, GF2Matrix(2 * n, tuple(rows)))


def write_ac06_file(data: AC06Data) -> str:
    n = data.n
    lines = [f"n={n}", "A:"]
    for r in data.a.rows:
        lines.append("".join("1" if (r >> i) & 1 else "0" for i in range(2 * n)))
    lines.append("f:")
    lines.extend(str(b) for b in data.f.support_strings())
    return "\n".join(lines) + "\n"
