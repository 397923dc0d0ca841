"""Weighted Dynkin diagrams of nilpotent orbits and the neutral elements
they induce inside a real form's split Cartan subspace.

Classical types use the eigenvalue recipe on partitions: a part p
contributes the string p-1, p-3, ..., 1-p; the sorted multiset gives the
dominant Cartan element and the weights are its pairings with the simple
roots.  Orbits of so(2n) with all parts even ("very even" partitions) come
in pairs whose diagrams differ by swapping the two fork weights; they are
labelled ^I and ^II.

Exceptional types are read from ``data/exceptional_wdd.txt``.  Every entry
of that table was regenerated by exhaustive search (all {0,1,2} weight
vectors whose Cartan element completes to an sl2-triple in the split
algebra, certified by exact bracket arithmetic), so the load-time
validation only needs to re-check counts and well-formedness.

A diagram matches a Satake diagram when black nodes carry weight 0 and
arrow-paired nodes carry equal weights; the matching diagrams are exactly
the nilpotent orbits meeting the real form, and each determines a unique
neutral element h in a, characterised by pairing w_i with the restricted
image of the i-th simple root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactlin import Vec, mat_inverse, mat_vec
from .realform import RealForm, SatakeDiagram, _read_data_text
from .rootsys import RootSystemType

_EXPECTED_EXCEPTIONAL_COUNTS = {("G", 2): 5, ("F", 4): 16, ("E", 6): 21,
                                ("E", 7): 45, ("E", 8): 70}


@dataclass(frozen=True)
class WeightedDynkinDiagram:
    ctype: RootSystemType
    weights: tuple[int, ...]
    label: str

    def __post_init__(self) -> None:
        if any(w not in (0, 1, 2) for w in self.weights):
            raise ValueError(f"weights must lie in {{0,1,2}}: {self.weights}")

    @property
    def support_size(self) -> int:
        return sum(1 for w in self.weights if w)


@dataclass(frozen=True)
class NeutralElement:
    h: Vec                       # a-coordinates (restricted simple-root basis)
    source: WeightedDynkinDiagram


def partitions(n: int, max_part: int | None = None) -> Iterable[tuple[int, ...]]:
    """All partitions of n in decreasing order, largest parts first."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _eigenvalues(partition: Sequence[int]) -> list[int]:
    out: list[int] = []
    for p in partition:
        out.extend(range(p - 1, -p - 1, -2))
    out.sort(reverse=True)
    return out


def _label(partition: Sequence[int], suffix: str = "") -> str:
    return "[" + ",".join(str(p) for p in partition) + "]" + suffix


def classical_wdds(t: RootSystemType | str) -> list[WeightedDynkinDiagram]:
    """One weighted diagram per nilpotent orbit of a classical simple type."""
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    if not t.is_simple:
        raise ValueError("classical_wdds expects a simple type")
    family, n = t.components[0]
    out: list[WeightedDynkinDiagram] = []
    if family == "A":
        for part in partitions(n + 1):
            m = _eigenvalues(part)
            weights = tuple(m[i] - m[i + 1] for i in range(n))
            out.append(WeightedDynkinDiagram(t, weights, _label(part)))
    elif family == "B":
        for part in partitions(2 * n + 1):
            if any(p % 2 == 0 and part.count(p) % 2 for p in set(part)):
                continue
            h = _eigenvalues(part)[:n]
            weights = tuple(h[i] - h[i + 1] for i in range(n - 1)) + (h[n - 1],)
            out.append(WeightedDynkinDiagram(t, weights, _label(part)))
    elif family == "C":
        for part in partitions(2 * n):
            if any(p % 2 == 1 and part.count(p) % 2 for p in set(part)):
                continue
            h = _eigenvalues(part)[:n]
            weights = tuple(h[i] - h[i + 1] for i in range(n - 1)) + (2 * h[n - 1],)
            out.append(WeightedDynkinDiagram(t, weights, _label(part)))
    elif family == "D":
        for part in partitions(2 * n):
            if any(p % 2 == 0 and part.count(p) % 2 for p in set(part)):
                continue
            h = _eigenvalues(part)[:n]
            body = tuple(h[i] - h[i + 1] for i in range(n - 2))
            wa, wb = h[n - 2] - h[n - 1], h[n - 2] + h[n - 1]
            if all(p % 2 == 0 for p in part):
                out.append(WeightedDynkinDiagram(t, body + (wa, wb), _label(part, "^I")))
                out.append(WeightedDynkinDiagram(t, body + (wb, wa), _label(part, "^II")))
            else:
                out.append(WeightedDynkinDiagram(t, body + (wa, wb), _label(part)))
    else:
        raise ValueError(f"classical_wdds does not handle family {family}")
    return out


@lru_cache(maxsize=None)
def _exceptional_table() -> dict[tuple[str, int], tuple[WeightedDynkinDiagram, ...]]:
    text = _read_data_text("exceptional_wdd.txt")
    table: dict[tuple[str, int], list[WeightedDynkinDiagram]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tname, label, weights = (p.strip() for p in line.split("|"))
        t = RootSystemType.parse(tname)
        w = tuple(int(x) for x in weights.split(","))
        if len(w) != t.rank:
            raise ValueError(f"bad weight vector length in line: {line!r}")
        table.setdefault(t.components[0], []).append(WeightedDynkinDiagram(t, w, label))
    for key, want in _EXPECTED_EXCEPTIONAL_COUNTS.items():
        rows = table.get(key, [])
        if len(rows) != want:
            raise ValueError(f"exceptional diagram table for {key} has {len(rows)} "
                             f"rows, expected {want}")
        if len({r.weights for r in rows}) != want or len({r.label for r in rows}) != want:
            raise ValueError(f"duplicate rows in exceptional table for {key}")
        zeros = [r for r in rows if not any(r.weights)]
        if len(zeros) != 1 or zeros[0].label != "0":
            raise ValueError(f"zero orbit missing or mislabelled for {key}")
    return {k: tuple(v) for k, v in table.items()}


def exceptional_wdds(t: RootSystemType | str) -> list[WeightedDynkinDiagram]:
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    family, rank = t.components[0]
    if family not in ("G", "F", "E"):
        raise ValueError(f"exceptional_wdds does not handle family {family}")
    return list(_exceptional_table()[(family, rank)])


def all_wdds(t: RootSystemType | str) -> list[WeightedDynkinDiagram]:
    if isinstance(t, str):
        t = RootSystemType.parse(t)
    family = t.components[0][0]
    if family in ("A", "B", "C", "D"):
        return classical_wdds(t)
    return exceptional_wdds(t)


def matches_satake(wdd: WeightedDynkinDiagram, satake: SatakeDiagram) -> bool:
    """Black nodes carry weight zero and arrow partners carry equal weights."""
    if wdd.ctype != satake.complex_type:
        raise ValueError("diagram and Satake diagram have different complex types")
    if any(wdd.weights[j] for j in satake.black_nodes):
        return False
    return all(wdd.weights[a] == wdd.weights[b] for a, b in satake.arrows)


def neutral_elements(rf: RealForm) -> list[NeutralElement]:
    """The set of hyperbolic elements h in a induced by the nonzero weighted
    diagrams matching the real form's Satake diagram (one per real orbit of
    sl2 subalgebras up to conjugacy)."""
    rrs = rf.restricted_system
    r = rrs.rank
    if r == 0:
        return []
    gram_inv = mat_inverse(rrs.gram)
    out: list[NeutralElement] = []
    for wdd in all_wdds(rf.satake.complex_type):
        if not any(wdd.weights):
            continue
        if not matches_satake(wdd, rf.satake):
            continue
        w_restricted = [None] * r
        for a in range(r):
            cols = [i for i, x in enumerate(rf.restriction_map[a]) if x]
            vals = {wdd.weights[i] for i in cols}
            if len(vals) != 1:
                raise AssertionError("matching diagram weights differ inside an orbit")
            w_restricted[a] = vals.pop()
        h = mat_vec(gram_inv, tuple(Fraction(x) for x in w_restricted))
        if all(x == 0 for x in h):
            raise AssertionError(f"matching nonzero diagram {wdd.label} restricted "
                                 "to zero; catalog and restriction data disagree")
        if not rrs.is_dominant(h):
            raise AssertionError("neutral element is not dominant")
        out.append(NeutralElement(h, wdd))
    out.sort(key=lambda ne: (ne.source.support_size, ne.source.weights))
    return out


def collinearity_reduce(elements: Sequence[NeutralElement]) -> list[NeutralElement]:
    """Keep one representative per line R·h (scans over scaled copies of the
    same line are redundant)."""
    kept: list[NeutralElement] = []
    for ne in elements:
        collinear = False
        for other in kept:
            ratio = None
            ok = True
            for a, b in zip(ne.h, other.h):
                if (a == 0) != (b == 0):
                    ok = False
                    break
                if b != 0:
                    q = Fraction(a) / Fraction(b)
                    if ratio is None:
                        ratio = q
                    elif ratio != q:
                        ok = False
                        break
            if ok and ratio is not None:
                collinear = True
                break
        if not collinear:
            kept.append(ne)
    return kept
