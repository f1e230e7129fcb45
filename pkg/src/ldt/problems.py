"""Concrete decision problems encoded as hyperplane families.

Each encoder lays a problem out as a family of integer hyperplanes and
a hidden point built from the instance values, so that the answer can
be read off the hidden point's sign pattern.  Enumerative encoders
refuse inputs past their documented caps instead of silently grinding.

Brute-force references live here too; they answer the same questions by
direct enumeration and serve as ground truth everywhere the solver's
output gets checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .geometry import Rational, Sign, SignVector, Vector, parse_rational
from .prng import SplitMix64


class SizeCapError(ValueError):
    """Instance exceeds a documented enumeration cap."""


class InstanceFormatError(ValueError):
    """Instance file or literal could not be parsed."""


class InconsistentPatternError(RuntimeError):
    """A sign pattern that no real point could have produced."""


SUBSET_SUM_CAP = 16
SUMSET_PAIR_CAP = 256
KLDT_TUPLE_CAP = 20000


@dataclass
class Encoding:
    """A problem instance mapped onto a hyperplane family."""

    kind: str
    dim: int
    family: list[Vector]
    hidden: Vector
    answer_kind: str
    meta: dict = field(default_factory=dict)


def _as_rationals(values: Sequence[Rational | int]) -> list[Fraction]:
    return [Fraction(v) for v in values]


def encode_ksum(values: Sequence[Rational | int], k: int) -> Encoding:
    """Does some k-subset of the values sum to zero?"""
    vals = _as_rationals(values)
    n = len(vals)
    if n == 0:
        raise InstanceFormatError("no values given")
    if not 1 <= k <= n:
        raise InstanceFormatError(f"k={k} out of range for {n} values")
    subsets = list(combinations(range(n), k))
    family = []
    for sub in subsets:
        coords = [0] * n
        for i in sub:
            coords[i] = 1
        family.append(Vector(coords))
    return Encoding(
        kind="ksum",
        dim=n,
        family=family,
        hidden=Vector(vals),
        answer_kind="decision",
        meta={"k": k, "subsets": subsets},
    )


def encode_subset_sum(
    values: Sequence[Rational | int], cap: int = SUBSET_SUM_CAP
) -> Encoding:
    """Does some nonempty subset of the values sum to zero?"""
    vals = _as_rationals(values)
    n = len(vals)
    if n == 0:
        raise InstanceFormatError("no values given")
    if n > cap:
        raise SizeCapError(
            f"subset-sum enumerates 2^n-1 hyperplanes; n={n} exceeds cap {cap}"
        )
    family = []
    subsets = []
    for mask in range(1, 1 << n):
        coords = [(mask >> i) & 1 for i in range(n)]
        family.append(Vector(coords))
        subsets.append(tuple(i for i in range(n) if (mask >> i) & 1))
    return Encoding(
        kind="subsetsum",
        dim=n,
        family=family,
        hidden=Vector(vals),
        answer_kind="decision",
        meta={"subsets": subsets},
    )


def encode_sort_sumset(
    a_values: Sequence[Rational | int],
    b_values: Sequence[Rational | int],
    cap: int = SUMSET_PAIR_CAP,
) -> Encoding:
    """Sort the pairwise sums a_i + b_j without looking at the values.

    One hyperplane per unordered pair of distinct (i, j) index pairs,
    including pairs sharing a row or a column: row and column repeats
    are exactly the comparisons that separate instances whose sumsets
    interleave differently, so they cannot be dropped.
    """
    avals = _as_rationals(a_values)
    bvals = _as_rationals(b_values)
    na, nb = len(avals), len(bvals)
    if na == 0 or nb == 0:
        raise InstanceFormatError("both value lists must be nonempty")
    if na * nb > cap:
        raise SizeCapError(
            f"sumset sorting enumerates pair comparisons; {na}x{nb} exceeds cap {cap}"
        )
    pairs = [(i, j) for i in range(na) for j in range(nb)]
    dim = na + nb
    family = []
    compared = []
    for p, q in combinations(range(len(pairs)), 2):
        (i, j), (k, l) = pairs[p], pairs[q]
        coords = [0] * dim
        coords[i] += 1
        coords[k] -= 1
        coords[na + j] += 1
        coords[na + l] -= 1
        family.append(Vector(coords))
        compared.append((p, q))
    return Encoding(
        kind="sortsumset",
        dim=dim,
        family=family,
        hidden=Vector(avals + bvals),
        answer_kind="ordering",
        meta={"pairs": pairs, "compared": compared, "na": na, "nb": nb},
    )


def encode_kldt(
    alphas: Sequence[Rational | int],
    values: Sequence[Rational | int],
    cap: int = KLDT_TUPLE_CAP,
) -> Encoding:
    """Does phi(a_{j1},..,a_{jk}) = alpha_0 + sum alpha_t a_{jt} vanish
    on any tuple of pairwise distinct indices?

    The hidden point carries alpha_0 and every product alpha_t * a_i,
    so each tuple becomes a 0/1 hyperplane with a constant-term slot.
    """
    alph = _as_rationals(alphas)
    vals = _as_rationals(values)
    if len(alph) < 2:
        raise InstanceFormatError("need alpha_0 and at least one coefficient")
    k = len(alph) - 1
    n = len(vals)
    count = math.perm(n, k) if n >= k else 0
    if count > cap:
        raise SizeCapError(
            f"{count} index tuples exceed cap {cap} for k={k}, n={n}"
        )
    dim = 1 + n * k
    hidden = [alph[0]]
    for t in range(1, k + 1):
        hidden.extend(alph[t] * a for a in vals)
    family = []
    tuples = []
    for tup in permutations(range(n), k):
        coords = [0] * dim
        coords[0] = 1
        for t, j in enumerate(tup):
            coords[1 + t * n + j] = 1
        family.append(Vector(coords))
        tuples.append(tup)
    return Encoding(
        kind="kldt",
        dim=dim,
        family=family,
        hidden=Vector(hidden),
        answer_kind="decision",
        meta={"k": k, "n": n, "tuples": tuples},
    )


def encode_zero_triangles(
    n_vertices: int, edges: Sequence[tuple[int, int, Rational | int]]
) -> Encoding:
    """Does some triangle have edge weights summing to zero?

    Vertices are 1-based; each edge is (u, v, weight).  The hidden
    point is the weight vector, one coordinate per edge.
    """
    if n_vertices < 1:
        raise InstanceFormatError("need at least one vertex")
    index: dict[tuple[int, int], int] = {}
    weights: list[Fraction] = []
    for u, v, wt in edges:
        if not (1 <= u <= n_vertices and 1 <= v <= n_vertices) or u == v:
            raise InstanceFormatError(f"bad edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in index:
            raise InstanceFormatError(f"duplicate edge {key}")
        index[key] = len(weights)
        weights.append(Fraction(wt))
    family = []
    triangles = []
    for u, v, w in combinations(range(1, n_vertices + 1), 3):
        e1 = index.get((u, v))
        e2 = index.get((u, w))
        e3 = index.get((v, w))
        if e1 is None or e2 is None or e3 is None:
            continue
        coords = [0] * len(weights)
        coords[e1] = coords[e2] = coords[e3] = 1
        family.append(Vector(coords))
        triangles.append((u, v, w))
    return Encoding(
        kind="triangles",
        dim=len(weights),
        family=family,
        hidden=Vector(weights),
        answer_kind="decision",
        meta={"triangles": triangles},
    )


def extract_answer(enc: Encoding, pattern: SignVector):
    """Read the problem's answer off a full sign pattern.

    Decision problems answer True when any hyperplane vanishes.  The
    ordering problem rebuilds the sorted groups of pairwise sums and
    cross-checks every comparison for consistency first; a pattern no
    point could produce raises instead of returning garbage.
    """
    if enc.answer_kind == "decision":
        return any(pattern[i] is Sign.ZERO for i in range(len(enc.family)))
    assert enc.answer_kind == "ordering"
    pairs = enc.meta["pairs"]
    compared = enc.meta["compared"]
    m = len(pairs)
    cmp: list[list[Sign | None]] = [[None] * m for _ in range(m)]
    for ident, (p, q) in enumerate(compared):
        s = pattern[ident]
        cmp[p][q] = s
        cmp[q][p] = s.flipped()
    for p in range(m):
        cmp[p][p] = Sign.ZERO
    rank = [sum(1 for q in range(m) if cmp[p][q] is Sign.PLUS) for p in range(m)]
    order = sorted(range(m), key=lambda p: rank[p])
    groups: list[list[int]] = []
    for p in order:
        if groups and rank[groups[-1][0]] == rank[p]:
            groups[-1].append(p)
        else:
            groups.append([p])
    base = 0
    for g in groups:
        if rank[g[0]] != base:
            raise InconsistentPatternError("ranks do not tile the order")
        base += len(g)
    for gi, g in enumerate(groups):
        for p in g:
            for q in g:
                if cmp[p][q] is not Sign.ZERO:
                    raise InconsistentPatternError(
                        f"pair {p},{q} grouped but not tied"
                    )
            for hg in groups[gi + 1 :]:
                for q in hg:
                    if cmp[p][q] is not Sign.MINUS:
                        raise InconsistentPatternError(
                            f"pair {p},{q} ordered inconsistently"
                        )
    return [
        sorted((pairs[p][0] + 1, pairs[p][1] + 1) for p in g) for g in groups
    ]


def brute_ksum(values: Sequence[Rational | int], k: int) -> bool:
    vals = _as_rationals(values)
    return any(sum(c) == 0 for c in combinations(vals, k))


def brute_subset_sum(values: Sequence[Rational | int]) -> bool:
    vals = _as_rationals(values)
    n = len(vals)
    for mask in range(1, 1 << n):
        total = Fraction(0)
        for i in range(n):
            if (mask >> i) & 1:
                total += vals[i]
        if total == 0:
            return True
    return False


def brute_sumset_order(
    a_values: Sequence[Rational | int], b_values: Sequence[Rational | int]
) -> list[list[tuple[int, int]]]:
    avals = _as_rationals(a_values)
    bvals = _as_rationals(b_values)
    sums: dict[Fraction, list[tuple[int, int]]] = {}
    for i, a in enumerate(avals):
        for j, b in enumerate(bvals):
            sums.setdefault(a + b, []).append((i + 1, j + 1))
    return [sorted(sums[s]) for s in sorted(sums)]


def brute_kldt(
    alphas: Sequence[Rational | int], values: Sequence[Rational | int]
) -> bool:
    alph = _as_rationals(alphas)
    vals = _as_rationals(values)
    k = len(alph) - 1
    for tup in permutations(range(len(vals)), k):
        total = alph[0]
        for t, j in enumerate(tup):
            total += alph[t + 1] * vals[j]
        if total == 0:
            return True
    return False


def brute_zero_triangles(
    n_vertices: int, edges: Sequence[tuple[int, int, Rational | int]]
) -> bool:
    index = {}
    weights = []
    for u, v, wt in edges:
        index[(min(u, v), max(u, v))] = len(weights)
        weights.append(Fraction(wt))
    for u, v, w in combinations(range(1, n_vertices + 1), 3):
        ids = [index.get((u, v)), index.get((u, w)), index.get((v, w))]
        if None in ids:
            continue
        if sum(weights[e] for e in ids) == 0:
            return True
    return False


def random_values(rng: SplitMix64, n: int, bound: int | None = None) -> list[int]:
    """Uniform integers in [-bound, bound], default bound 10n."""
    b = bound if bound is not None else 10 * n
    return [rng.randint(-b, b) for _ in range(n)]


def random_ksum_instance(
    rng: SplitMix64, n: int, k: int, planted: bool, bound: int | None = None
) -> list[int]:
    """Planted instances force one zero k-subset; generic ones are raw
    draws whose answer is whatever it happens to be.  A wide bound
    makes raw draws overwhelmingly negative."""
    vals = random_values(rng, n, bound)
    if planted:
        picks = rng.sample_indices(n, k)
        vals[picks[-1]] = -sum(vals[i] for i in picks[:-1])
    return vals


def random_subset_sum_instance(
    rng: SplitMix64, n: int, planted: bool, bound: int | None = None
) -> list[int]:
    vals = random_values(rng, n, bound)
    if planted:
        size = min(n, 2 + rng.below(max(1, n - 1)))
        picks = rng.sample_indices(n, size)
        vals[picks[-1]] = -sum(vals[i] for i in picks[:-1])
    return vals


def random_sumset_instance(
    rng: SplitMix64, na: int, nb: int
) -> tuple[list[int], list[int]]:
    return random_values(rng, na), random_values(rng, nb)


def random_kldt_instance(
    rng: SplitMix64, n: int, k: int, planted: bool
) -> tuple[list[int], list[int]]:
    alphas = [rng.randint(-10 * n, 10 * n)]
    alphas.extend(
        (1 if rng.below(2) else -1) * (1 + rng.below(5)) for _ in range(k)
    )
    vals = random_values(rng, n)
    if planted:
        # a unit coefficient keeps the planted value an integer
        alphas[k] = 1 if alphas[k] > 0 else -1
        picks = rng.sample_indices(n, k)
        partial = alphas[0] + sum(
            alphas[t + 1] * vals[j] for t, j in enumerate(picks[:-1])
        )
        vals[picks[-1]] = -partial * alphas[k]
    return alphas, vals


def random_triangles_instance(
    rng: SplitMix64, n_vertices: int, planted: bool
) -> tuple[int, list[tuple[int, int, int]]]:
    bound = 10 * n_vertices
    for _ in range(1000):
        edges: list[list[int]] = []
        present: dict[tuple[int, int], int] = {}
        for u, v in combinations(range(1, n_vertices + 1), 2):
            if rng.below(2):
                present[(u, v)] = len(edges)
                edges.append([u, v, rng.randint(-bound, bound)])
        if planted:
            tris = [
                (u, v, w)
                for u, v, w in combinations(range(1, n_vertices + 1), 3)
                if (u, v) in present and (u, w) in present and (v, w) in present
            ]
            if not tris:
                continue
            u, v, w = tris[rng.below(len(tris))]
            e1, e2, e3 = present[(u, v)], present[(u, w)], present[(v, w)]
            edges[e3][2] = -(edges[e1][2] + edges[e2][2])
        return n_vertices, [(u, v, wt) for u, v, wt in edges]
    raise RuntimeError("graph sampling never produced a triangle to plant")


def parse_value_line(text: str) -> list[Fraction]:
    """Whitespace separated rationals; newlines count as whitespace."""
    tokens = text.split()
    if not tokens:
        raise InstanceFormatError("no values found")
    try:
        return [parse_rational(t) for t in tokens]
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None


def parse_two_line_instance(text: str) -> tuple[list[Fraction], list[Fraction]]:
    """Two nonempty lines of rationals (first list, second list)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise InstanceFormatError(
            f"expected exactly two nonempty lines, found {len(lines)}"
        )
    return parse_value_line(lines[0]), parse_value_line(lines[1])


def parse_triangle_instance(
    text: str,
) -> tuple[int, list[tuple[int, int, Fraction]]]:
    """First line the vertex count, then one 'u v weight' line per edge."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InstanceFormatError("empty instance")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise InstanceFormatError("first line must be the vertex count") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise InstanceFormatError(f"edge line needs 'u v weight': {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1]), parse_rational(parts[2])))
        except ValueError as exc:
            raise InstanceFormatError(str(exc)) from None
    return n, edges
