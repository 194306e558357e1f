"""Structure results on CWS codes used as search-space filters.

Linear classical codes give additive (stabilizer) quantum codes, every
two-word code is linear, any verified three-word code extends to a verified
four-word linear code by adjoining the XOR of its nonzero words, and any
linear subcode doubles through an outside codeword.  The optimality filter
turns externally supplied "no additive ((n,2K,d)) exists" facts into pruning
verdicts for the search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errormap import ErrorSet
from .gf2 import BitString, ClassicalCode
from .verify import CWSCode, detection_check


@dataclass(frozen=True)
class LinearityReport:
    is_linear: bool
    basis: tuple[BitString, ...] | None
    violating_pair: tuple[BitString, BitString] | None


def is_linear(c: ClassicalCode) -> LinearityReport:
    """Closure under XOR, with a GF(2) basis when it holds."""
    if not c.contains_zero():
        raise ValueError("linearity test requires the all-zeros word (standard form)")
    values = set(c.values)
    words = sorted(values)
    for i, a in enumerate(words):
        for b in words[i + 1 :]:
            if a ^ b not in values:
                return LinearityReport(
                    False, None, (BitString(c.n, a), BitString(c.n, b))
                )
    basis: list[int] = []
    by_top: dict[int, int] = {}
    for w in words:
        t = w
        while t:
            top = t.bit_length() - 1
            if top not in by_top:
                by_top[top] = t
                basis.append(t)
                break
            t ^= by_top[top]
    if len(c.words) != 1 << len(basis):
        raise RuntimeError("closed code size is not a power of two")
    return LinearityReport(True, tuple(BitString(c.n, b) for b in sorted(basis)), None)


def additivity_label(c: ClassicalCode, exhaustively_nonlinear_only: bool = False) -> str:
    """"additive" for linear codes; nonlinear codes are only called
    "nonadditive" when an exhaustive search argument backs it."""
    if is_linear(c).is_linear:
        return "additive"
    return "nonadditive" if exhaustively_nonlinear_only else "not manifestly additive"


def extend_dim3_to_dim4(q: CWSCode, errors: ErrorSet) -> CWSCode:
    """Extend a verified three-word code by the XOR of its nonzero words.

    The result is linear, has four words, and detects the same error set;
    both facts are asserted before returning."""
    if q.code.size != 3:
        raise ValueError(f"expected a K=3 code, got K={q.code.size}")
    if not detection_check(q, errors).detects:
        raise ValueError("input code fails detection for the given error set")
    nonzero = [w for w in q.code.values if w]
    c2, c3 = nonzero
    extended = ClassicalCode.from_ints(q.n, sorted([0, c2, c3, c2 ^ c3]))
    out = CWSCode(q.graph, extended, q.claimed_distance)
    if not detection_check(out, errors).detects:
        raise RuntimeError("extended code unexpectedly fails detection")
    if not is_linear(extended).is_linear:
        raise RuntimeError("extended code is unexpectedly nonlinear")
    return out


def double_linear_subcode(
    q: CWSCode, b: ClassicalCode, v: BitString, errors: ErrorSet
) -> CWSCode:
    """From a linear subcode B and a codeword v outside it, build the
    doubled linear code {B, v + B}; verified against the same error set."""
    if b.n != q.n or v.n != q.n:
        raise ValueError("component lengths disagree")
    report = is_linear(b)
    if not report.is_linear:
        raise ValueError("subcode is not linear")
    code_vals = set(q.code.values)
    if not set(b.values) <= code_vals:
        raise ValueError("subcode is not contained in the code")
    if v.value not in code_vals:
        raise ValueError("v is not a codeword")
    if v.value in set(b.values):
        raise ValueError("v must lie outside the subcode")
    if not detection_check(q, errors).detects:
        raise ValueError("input code fails detection for the given error set")
    doubled = sorted({w for w in b.values} | {w ^ v.value for w in b.values})
    out = CWSCode(q.graph, ClassicalCode.from_ints(q.n, doubled), q.claimed_distance)
    if not detection_check(out, errors).detects:
        raise RuntimeError("doubled code unexpectedly fails detection")
    return out


# ---------------------------------------------------------------------------
# optimality registry

@dataclass(frozen=True)
class RegistryEntry:
    n: int
    k: int
    d: int
    optimal: bool
    source: str


def parse_registry(text: str) -> tuple[RegistryEntry, ...]:
    """Lines of "n=<n> K=<K> d=<d> optimal=<yes|no> source=<free text>"."""
    entries = []
    for lineno, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        fields: dict[str, str] = {}
        parts = ln.split(None, 4)
        for part in parts:
            if "=" not in part:
                raise ValueError(f"registry line {lineno}: bad field {part!r}")
            key, val = part.split("=", 1)
            fields[key] = val
        try:
            entries.append(
                RegistryEntry(
                    n=int(fields["n"]),
                    k=int(fields["K"]),
                    d=int(fields["d"]),
                    optimal={"yes": True, "no": False}[fields["optimal"]],
                    source=fields.get("source", ""),
                )
            )
        except (KeyError, ValueError) as exc:
            raise ValueError(f"registry line {lineno}: {ln!r}") from exc
    return tuple(entries)


@dataclass(frozen=True)
class FilterVerdict:
    verdict: str  # "pruned" or "open"
    reason: str


def optimality_filter(
    n: int, k: int, d: int, registry: tuple[RegistryEntry, ...]
) -> FilterVerdict:
    """Prune (n, K, d) when a registry fact rules it out.

    An optimal additive ((n,1,d)) rules out every K > 1; an optimal additive
    ((n,2,d)) rules out every K > 2.  Nothing else prunes."""
    for entry in registry:
        if entry.n != n or entry.d != d or not entry.optimal:
            continue
        if entry.k == 1 and k > 1:
            return FilterVerdict(
                "pruned", f"optimal additive (({n},1,{d})) forbids K>1 ({entry.source})"
            )
        if entry.k == 2 and k > 2:
            return FilterVerdict(
                "pruned", f"optimal additive (({n},2,{d})) forbids K>2 ({entry.source})"
            )
    return FilterVerdict("open", "no registry fact applies")
