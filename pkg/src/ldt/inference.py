"""Sorted samples, polyhedral cells and sign inference.

A queried sample pins the hidden point x into a cell: the set of points
that agree with every queried label and with the sorted order of the
sample's inner products.  A hyperplane h is inferred when its sign is
constant over that whole cell; the sign then costs no further query.

The reduced cell uses one constraint per member label plus one per
consecutive sorted pair.  Transitivity makes this exact: every pairwise
comparison inside the sample is a nonnegative combination of
consecutive gaps, so the reduced system carves the same cell as the
full quadratic one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .geometry import Sign, Vector, sign_of
from .lp import HomogeneousSystem, cone_member, feasible, interior_witness
from .oracle import HiddenPointOracle


@dataclass
class SortedSample:
    """Labels and sorted order of a queried sample.

    members holds (identifier, vector) pairs; labels align with members.
    order lists member positions by nondecreasing inner product with the
    hidden point, and gap_signs[i] is the sign of the difference between
    sorted neighbours i+1 and i (ZERO or PLUS by construction).
    """

    members: list[tuple[int, Vector]]
    labels: list[Sign]
    order: list[int]
    gap_signs: list[Sign]

    def sorted_positions(self) -> list[int]:
        return self.order


class InconsistentSampleError(AssertionError):
    """Sorted order and labels disagree; the oracle answers are corrupt."""


def build_sorted_sample(
    members: Sequence[tuple[int, Vector]], oracle: HiddenPointOracle
) -> SortedSample:
    """Label every member, then sort by comparison queries.

    The sort is a stable merge sort, so it spends at most
    |S|*ceil(log2 |S|) comparisons.  Consecutive gap signs reuse the
    sort's own answers where available and cost at most one extra
    comparison per adjacent pair otherwise.
    """
    members = list(members)
    labels = [oracle.label_query(v, ident=i) for i, v in members]

    cache: dict[tuple[int, int], Sign] = {}

    def pair_sign(a: int, b: int) -> Sign:
        """Sign of value(a) - value(b), cached on the unordered pair."""
        if a == b:
            return Sign.ZERO
        key = (a, b) if a < b else (b, a)
        s = cache.get(key)
        if s is None:
            ia, va = members[key[0]]
            ib, vb = members[key[1]]
            s = oracle.comparison_query(va, vb, idents=(ia, ib))
            cache[key] = s
        return s if a < b else s.flipped()

    def merge_sort(seq: list[int]) -> list[int]:
        if len(seq) <= 1:
            return seq
        mid = len(seq) // 2
        left = merge_sort(seq[:mid])
        right = merge_sort(seq[mid:])
        out: list[int] = []
        i = j = 0
        while i < len(left) and j < len(right):
            if pair_sign(left[i], right[j]) is not Sign.PLUS:
                out.append(left[i])
                i += 1
            else:
                out.append(right[j])
                j += 1
        out.extend(left[i:])
        out.extend(right[j:])
        return out

    order = merge_sort(list(range(len(members))))
    gap_signs = [pair_sign(order[i + 1], order[i]) for i in range(len(order) - 1)]

    if any(s is Sign.MINUS for s in gap_signs):
        raise InconsistentSampleError("sorted order violated by a gap sign")
    for earlier, later in zip(order, order[1:]):
        if labels[earlier] > labels[later]:
            raise InconsistentSampleError("labels out of order along the sort")
    return SortedSample(members, labels, order, gap_signs)


@dataclass
class CellDescription:
    """Constraint view of the cell pinned down by a sorted sample."""

    dim: int
    constraints: HomogeneousSystem
    sample: SortedSample | None = None
    _witness: Vector | None = field(default=None, repr=False)
    _witness_done: bool = field(default=False, repr=False)

    def witness(self) -> Vector | None:
        """Interior point of the cell, computed once and cached."""
        if not self._witness_done:
            self._witness = interior_witness(self.constraints)
            self._witness_done = True
        return self._witness


def cell_from_sample(sample: SortedSample, dim: int) -> CellDescription:
    """Reduced cell: one row per label, one row per consecutive gap."""
    strict: list[Vector] = []
    equalities: list[Vector] = []
    for (_, v), lab in zip(sample.members, sample.labels):
        if lab is Sign.PLUS:
            strict.append(v)
        elif lab is Sign.MINUS:
            strict.append(-v)
        else:
            equalities.append(v)
    for i, gap in enumerate(sample.gap_signs):
        lo = sample.members[sample.order[i]][1]
        hi = sample.members[sample.order[i + 1]][1]
        diff = hi - lo
        if gap is Sign.PLUS:
            strict.append(diff)
        else:
            equalities.append(diff)
    system = HomogeneousSystem(
        dim, strict=tuple(strict), equalities=tuple(equalities)
    )
    return CellDescription(dim, system, sample)


def infer_sign(cell: CellDescription, h: Vector) -> Sign | None:
    """Sign of h over the whole cell, or None when both signs occur.

    The candidate sign is read off at an interior witness; it stands
    exactly when every alternative sign is infeasible against the cell.
    """
    if h.is_zero():
        return Sign.ZERO
    w = cell.witness()
    if w is None:
        raise ValueError("cell is empty; it cannot have come from a real sample")
    b = sign_of(h.dot(w))
    base = cell.constraints
    if b is Sign.PLUS:
        if not feasible(base.augmented(weak=[-h])):
            return Sign.PLUS
        return None
    if b is Sign.MINUS:
        if not feasible(base.augmented(weak=[h])):
            return Sign.MINUS
        return None
    if not feasible(base.augmented(strict=[h])) and not feasible(
        base.augmented(strict=[-h])
    ):
        return Sign.ZERO
    return None


@dataclass
class InferenceOutcome:
    """Result of inference over a working set."""

    inferred: dict[int, Sign]
    undetermined: list[int]


def infer_set(
    cell: CellDescription, remaining: Sequence[tuple[int, Vector]]
) -> InferenceOutcome:
    """Decide every member of remaining against the cell.

    Sample members always come back with their queried labels.  With
    chain structure available (a cell built from a sorted sample) the
    batched engine does the work; otherwise each member runs through
    infer_sign directly.
    """
    if cell.sample is not None:
        from .batch import infer_set_batch

        return infer_set_batch(cell, remaining)
    inferred: dict[int, Sign] = {}
    undetermined: list[int] = []
    for ident, v in remaining:
        s = infer_sign(cell, v)
        if s is None:
            undetermined.append(ident)
        else:
            inferred[ident] = s
    return InferenceOutcome(inferred, undetermined)


def _span_basis(vectors: Sequence[Vector], dim: int) -> list[list[Fraction]]:
    """Row-reduced basis of the span, for repeated membership tests."""
    rows: list[list[Fraction]] = []
    for v in vectors:
        rows.append([Fraction(c) for c in v.coords])
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        row = row[:]
        for b, p in zip(basis, pivots):
            if row[p]:
                f = row[p]
                row = [a - f * bb for a, bb in zip(row, b)]
        lead = next((j for j in range(dim) if row[j]), None)
        if lead is None:
            continue
        inv = Fraction(1) / row[lead]
        row = [a * inv for a in row]
        basis.append(row)
        pivots.append(lead)
    return [b + [Fraction(p)] for b, p in zip(basis, pivots)]


def _in_span(basis_rows: list[list[Fraction]], h: Vector) -> bool:
    row = [Fraction(c) for c in h.coords]
    for b in basis_rows:
        p = int(b[-1])
        if row[p]:
            f = row[p]
            row = [a - f * bb for a, bb in zip(row, b[:-1])]
    return not any(row)


def structural_infer(sample: SortedSample, h: Vector) -> Sign | None:
    """Certificate-only inference; sound but deliberately incomplete.

    ZERO: h lies in the span of the ZERO-labelled members.
    PLUS: h minus the smallest PLUS-labelled member is a nonnegative
    combination of consecutive differences of the sorted PLUS members,
    which forces the value of h above a known positive one.  MINUS is
    the mirror image.  Anything else returns None.
    """
    dim = h.dim
    zero_members = [
        sample.members[i][1]
        for i in range(len(sample.members))
        if sample.labels[i] is Sign.ZERO
    ]
    if h.is_zero():
        return Sign.ZERO
    if zero_members:
        basis = _span_basis(zero_members, dim)
        if _in_span(basis, h):
            return Sign.ZERO

    def ascending(label: Sign) -> list[Vector]:
        return [
            sample.members[pos][1]
            for pos in sample.order
            if sample.labels[pos] is label
        ]

    plus = ascending(Sign.PLUS)
    if plus:
        diffs = [b - a for a, b in zip(plus, plus[1:])]
        if cone_member(diffs, h - plus[0]) is not None:
            return Sign.PLUS
    minus = ascending(Sign.MINUS)
    if minus:
        flipped = [-v for v in reversed(minus)]
        diffs = [b - a for a, b in zip(flipped, flipped[1:])]
        if cone_member(diffs, (-h) - flipped[0]) is not None:
            return Sign.MINUS
    return None
