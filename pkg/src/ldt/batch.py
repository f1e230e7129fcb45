"""Batched sign inference against a chain-structured cell.

After factoring out its equalities, the cell carved by a sorted sample
is an open full-dimensional cone cut by the consecutive block
differences of the sorted chain.  Over such a cone a hyperplane is
sign-constant exactly when it, or its negation, is a nonnegative
combination of those differences, so inference reduces to cone
membership.  This module answers that question for a whole working set
at once, cheapest proof first:

  * reduce modulo the equality span; a vanishing reduction means ZERO;
  * reject against a pool of exact interior points (mixed signs, or a
    zero value at an interior point, rule inference out);
  * certify by dominance: harvested coordinate comparisons and sampled
    anchors combine into explicit conic decompositions;
  * finish stragglers with least-squares proposals verified exactly,
    then an exact cone-membership solve, capped in high dimension.

Floating point only ever proposes.  Every accepted sign carries an
exact integer or rational certificate, so a wrong answer is impossible;
the only cost of a missed proof is a hyperplane left undetermined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.optimize import nnls as scipy_nnls

from .geometry import Sign, Vector
from .inference import CellDescription, InferenceOutcome, infer_sign
from .lp import cone_member
from .prng import SplitMix64

_POOL_TARGET = 64
_ANCHOR_TRIES = 48
_PAIR_ANCHORS = 8
_FAST_ANCHORS = 40
_UNIT_CAP = 12
_EXACT_LP_DIM = 16
_SUPPORT_CACHE = 10
_COORD_CAP = 1 << 40
_GEMM_GUARD = 1 << 62


def _split_blocks(sample) -> tuple[list[list[int]], list[Sign]]:
    """Group sorted positions into equal-value blocks."""
    blocks: list[list[int]] = []
    cur = [sample.order[0]]
    for i, gap in enumerate(sample.gap_signs):
        nxt = sample.order[i + 1]
        if gap is Sign.ZERO:
            cur.append(nxt)
        else:
            blocks.append(cur)
            cur = [nxt]
    blocks.append(cur)
    labels = []
    for blk in blocks:
        lab = sample.labels[blk[0]]
        assert all(sample.labels[p] is lab for p in blk), "tied values, differing labels"
        labels.append(lab)
    return blocks, labels


def _rref(rows: list[list[Fraction]], n: int) -> tuple[list[list[Fraction]], list[int]]:
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for row in rows:
        row = row[:]
        for b, p in zip(basis, pivots):
            if row[p]:
                f = row[p]
                row = [a - f * bb for a, bb in zip(row, b)]
        lead = next((j for j in range(n) if row[j]), None)
        if lead is None:
            continue
        inv = Fraction(1) / row[lead]
        row = [a * inv for a in row]
        for b, p in zip(basis, pivots):
            if b[lead]:
                f = b[lead]
                b[:] = [a - f * rr for a, rr in zip(b, row)]
        basis.append(row)
        pivots.append(lead)
    return basis, pivots


def _kernel_basis(e_rows: list[Vector], n: int) -> list[list[int]]:
    """Integer basis of the common kernel of the given functionals.

    Returned as a list of columns; coordinates of the reduced space are
    the free columns of the row-reduced equality system.
    """
    basis, pivots = _rref([[Fraction(c) for c in v.coords] for v in e_rows], n)
    pivot_set = set(pivots)
    cols: list[list[int]] = []
    for f in range(n):
        if f in pivot_set:
            continue
        col = [Fraction(0)] * n
        col[f] = Fraction(1)
        for row, p in zip(basis, pivots):
            col[p] = -row[f]
        den = 1
        for q in col:
            den = den * q.denominator // _gcd(den, q.denominator)
        ints = [int(q * den) for q in col]
        g = 0
        for v in ints:
            g = _gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        cols.append(ints)
    return cols


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class _ChainCell:
    """Reduced, integer view of a sample cell."""

    n: int
    n_red: int
    kb: list[list[int]] | None
    reps: list[tuple[int, ...]]
    z: int
    chain: list[tuple[int, ...]]
    reach: list[int] = field(default_factory=list)
    anchors: list[tuple[int, ...]] = field(default_factory=list)
    above_raw: list[tuple[int, ...]] = field(default_factory=list)
    below_raw: list[tuple[int, ...]] = field(default_factory=list)
    lp_budget: int | None = None
    support_cache: list[list[int]] = field(default_factory=list)
    _chain_vecs: list[Vector] | None = None
    _nnls_mat: np.ndarray | None = None

    def chain_vecs(self) -> list[Vector]:
        if self._chain_vecs is None:
            self._chain_vecs = [Vector(row) for row in self.chain]
        return self._chain_vecs

    def nnls_mat(self) -> np.ndarray:
        if self._nnls_mat is None:
            self._nnls_mat = np.array(self.chain, dtype=np.float64).T
        return self._nnls_mat


def _chain_cell(sample, dim: int) -> _ChainCell | None:
    """Build the reduced cell; None when the data is not integral."""
    if any(v.ints is None for _, v in sample.members):
        return None
    blocks, blabels = _split_blocks(sample)
    zero_blocks = [i for i, lab in enumerate(blabels) if lab is Sign.ZERO]
    assert len(zero_blocks) <= 1
    e_rows: list[Vector] = []
    reps_full: list[Vector] = []
    if zero_blocks:
        z = zero_blocks[0]
        for i, blk in enumerate(blocks):
            if i == z:
                reps_full.append(Vector.zero(dim))
                e_rows.extend(sample.members[p][1] for p in blk)
            else:
                rep = sample.members[blk[0]][1]
                reps_full.append(rep)
                e_rows.extend(sample.members[p][1] - rep for p in blk[1:])
    else:
        z = sum(1 for lab in blabels if lab is Sign.MINUS)
        for i, blk in enumerate(blocks):
            rep = sample.members[blk[0]][1]
            reps_full.append(rep)
            e_rows.extend(sample.members[p][1] - rep for p in blk[1:])
        reps_full.insert(z, Vector.zero(dim))

    if e_rows:
        kb = _kernel_basis(e_rows, dim)
        n_red = len(kb)
        reps = [_reduce_vec(v, kb) for v in reps_full]
    else:
        kb = None
        n_red = dim
        reps = [v.ints if v.ints is not None else tuple(int(c) for c in v.coords) for v in reps_full]
    chain = [
        tuple(b - a for a, b in zip(reps[j], reps[j + 1]))
        for j in range(len(reps) - 1)
    ]
    assert all(any(row) for row in chain), "consecutive blocks collapsed"
    cc = _ChainCell(dim, n_red, kb, reps, z, chain)
    # certification tiers: tiny cells run the dense rational simplex
    # freely, mid-size cells get a bounded number of calls, and beyond
    # _EXACT_LP_DIM per-target certification is skipped outright since
    # a missed inference only costs one direct label query
    if n_red <= 8:
        cc.lp_budget = None
    elif n_red <= _EXACT_LP_DIM:
        cc.lp_budget = 6
    else:
        cc.lp_budget = 0
    _harvest_atoms(cc)
    _collect_anchors(cc)
    return cc


def _reduce_vec(v: Vector, kb: list[list[int]]) -> tuple[int, ...]:
    ints = v.ints
    assert ints is not None
    return tuple(
        sum(h * col[i] for i, h in enumerate(ints) if h) for col in kb
    )


def _harvest_atoms(cc: _ChainCell) -> None:
    """Mine strict coordinate comparisons from equal block differences.

    Two blocks whose reduced representatives differ by e_c - e_d pin the
    sign of x_c - x_d to the known order of the blocks; a difference of
    e_c alone compares x_c against zero.  The hits are closed under
    transitivity into per-node reachability bitmasks, with node n_red
    standing for the origin.
    """
    nr = cc.n_red
    origin = nr
    groups: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for b, r in enumerate(cc.reps):
        groups.setdefault(r, []).append((b, -1))
        lr = list(r)
        for c in range(nr):
            lr[c] -= 1
            groups.setdefault(tuple(lr), []).append((b, c))
            lr[c] += 1
    adj = [0] * (nr + 1)
    for entries in groups.values():
        if len(entries) < 2:
            continue
        for (b1, c1), (b2, c2) in combinations(entries, 2):
            if b1 == b2:
                continue
            if c1 == -1 and c2 == -1:
                continue
            if c2 == -1:
                u, v = (c1, origin) if b1 > b2 else (origin, c1)
            elif c1 == -1:
                u, v = (c2, origin) if b2 > b1 else (origin, c2)
            else:
                u, v = (c1, c2) if b1 > b2 else (c2, c1)
            adj[u] |= 1 << v
    reach = [0] * (nr + 1)
    for start in range(nr + 1):
        seen = 0
        stack = [start]
        while stack:
            u = stack.pop()
            fresh = adj[u] & ~seen
            seen |= fresh
            while fresh:
                low = fresh & -fresh
                stack.append(low.bit_length() - 1)
                fresh ^= low
        reach[start] = seen
    cc.reach = reach


def _collect_anchors(cc: _ChainCell) -> None:
    """Cone anchors ordered by distance from the zero block."""
    above = [cc.reps[b] for b in range(cc.z + 1, len(cc.reps))]
    below = [
        tuple(-x for x in cc.reps[b]) for b in range(cc.z - 1, -1, -1)
    ]
    cc.above_raw = above
    cc.below_raw = [cc.reps[b] for b in range(cc.z - 1, -1, -1)]
    merged: list[tuple[int, ...]] = []
    for a, b in zip(above, below):
        merged.append(a)
        merged.append(b)
    longer = above if len(above) > len(below) else below
    merged.extend(longer[min(len(above), len(below)):])
    cc.anchors = merged


def _uniform01(rng: SplitMix64) -> float:
    return rng.next_u64() / 2.0 ** 64


def _build_pool(cc: _ChainCell) -> np.ndarray:
    """Exact integer points interior to the reduced cell, as columns.

    A max-margin float program proposes, the chain rows verify; a point
    joins the pool only with every strict product positive.  With no
    chain rows the cell is the whole reduced space and signed units
    suffice.  An empty result is allowed: the caller then simply has
    nothing to screen with and leaves the round to direct labels.
    """
    nr = cc.n_red
    if not cc.chain:
        eye = np.eye(nr, dtype=np.int64)
        return np.hstack([eye, -eye]) if nr else np.zeros((nr, 0), dtype=np.int64)
    C = np.array(cc.chain, dtype=np.int64)
    cmax = max(1, int(np.abs(C).max()))
    Cf = C.astype(np.float64)
    m = C.shape[0]
    cols: list[np.ndarray] = []
    seen: set[tuple[int, ...]] = set()

    def admit(yf: np.ndarray) -> None:
        peak = float(np.max(np.abs(yf)))
        if not np.isfinite(peak):
            return
        scale = 2.0 ** 20
        if peak * scale > _COORD_CAP:
            scale = max(1.0, _COORD_CAP / (peak + 1.0))
        yi = np.rint(yf * scale)
        if not np.isfinite(yi).all():
            return
        yi = yi.astype(np.int64)
        top = int(np.abs(yi).max(initial=0))
        if top == 0 or top * cmax * nr >= _GEMM_GUARD:
            return
        if not (C @ yi > 0).all():
            return
        key = tuple(int(x) for x in yi)
        if key not in seen:
            seen.add(key)
            cols.append(yi)

    # maximize the worst row margin, in units of each row's norm; the
    # optimum sits well off every facet, so integer rounding keeps all
    # strict products positive even for very thin cells
    wrow = np.linalg.norm(Cf, axis=1)
    a_ub = np.hstack([-Cf, wrow[:, None]])
    b_ub = np.zeros(m)
    bounds = [(-1.0, 1.0)] * nr + [(0.0, None)]
    objective = np.zeros(nr + 1)
    objective[-1] = -1.0
    res = linprog(objective, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    delta = float(res.x[-1]) if res.status == 0 and res.x is not None else 0.0
    if delta > 1e-12:
        admit(res.x[:nr])
        # diverse interior points: random objectives over the shrunken
        # cell C y >= (delta/2) * wrow keep every point clear of facets
        b_half = -0.5 * delta * wrow
        rng = SplitMix64(0x5EED_CE11)
        a_in = np.hstack([-Cf, np.zeros((m, 1))])
        while len(cols) < _POOL_TARGET // 2:
            c_rand = np.array(
                [2.0 * _uniform01(rng) - 1.0 for _ in range(nr)] + [0.0]
            )
            r2 = linprog(
                c_rand, A_ub=a_in, b_ub=b_half, bounds=bounds, method="highs"
            )
            if r2.status != 0 or r2.x is None:
                break
            before = len(cols)
            admit(r2.x[:nr])
            if len(cols) == before:
                break

    if not cols:
        return np.zeros((nr, 0), dtype=np.int64)

    seed = cols[0]
    if int(np.abs(seed).max(initial=0)) * 4096 * cmax * nr < _GEMM_GUARD:
        boosted = seed * 4096
        for c in range(nr):
            if len(cols) >= _POOL_TARGET:
                break
            for delta in (1, -1):
                cand = boosted.copy()
                cand[c] += delta
                if (C @ cand > 0).all():
                    key = tuple(int(x) for x in cand)
                    if key not in seen:
                        seen.add(key)
                        cols.append(cand)
    return np.stack(cols[:_POOL_TARGET], axis=1)


def _decompose_units(g: Sequence[int], cc: _ChainCell) -> bool:
    """Ground every unit of g on a harvested strict comparison.

    g splits into +e_c and -e_d units; each positive unit needs either
    a negative partner it provably exceeds or a proof it exceeds zero,
    and leftover negative units need a proof they sit below zero.
    """
    origin = cc.n_red
    reach = cc.reach
    pos: list[int] = []
    neg: list[int] = []
    for c, val in enumerate(g):
        if val > 0:
            pos.extend([c] * val)
        elif val < 0:
            neg.extend([c] * (-val))
        if len(pos) + len(neg) > _UNIT_CAP:
            return False
    if not pos and not neg:
        return False
    zero_mask = reach[origin]
    if all((reach[c] >> origin) & 1 for c in pos) and all(
        (zero_mask >> d) & 1 for d in neg
    ):
        return True
    full = (1 << len(neg)) - 1
    memo: dict[tuple[int, int], bool] = {}

    def ok(i: int, used: int) -> bool:
        if i == len(pos):
            rest = full & ~used
            j = 0
            while rest:
                if rest & 1 and not (zero_mask >> neg[j]) & 1:
                    return False
                rest >>= 1
                j += 1
            return True
        key = (i, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        c = pos[i]
        res = False
        if (reach[c] >> origin) & 1 and ok(i + 1, used):
            res = True
        else:
            for j, d in enumerate(neg):
                if used >> j & 1:
                    continue
                if (reach[c] >> d) & 1 and ok(i + 1, used | (1 << j)):
                    res = True
                    break
        memo[key] = res
        return res

    return ok(0, 0)


def _anchored_cert(target: list[int], cc: _ChainCell) -> bool:
    """Conic decomposition of target using anchors plus unit atoms."""
    if _decompose_units(target, cc):
        return True
    tried = 0
    for a in cc.anchors:
        if tried >= _ANCHOR_TRIES:
            break
        tried += 1
        g = [t - x for t, x in zip(target, a)]
        if sum(abs(v) for v in g) <= _UNIT_CAP and _decompose_units(g, cc):
            return True
    head = cc.anchors[:_PAIR_ANCHORS]
    for i in range(len(head)):
        for j in range(i, len(head)):
            g = [t - x - y for t, x, y in zip(target, head[i], head[j])]
            if sum(abs(v) for v in g) <= _UNIT_CAP and _decompose_units(g, cc):
                return True
    return False


def _nnls(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, float]:
    """Nonnegative least squares, proposal quality only."""
    try:
        return scipy_nnls(A, b)
    except RuntimeError:
        # iteration cap; whatever it had is still a usable proposal
        return np.zeros(A.shape[1]), float(np.linalg.norm(b))


def _exact_support_solve(
    cc: _ChainCell, support: Sequence[int], target: list[int]
) -> bool:
    """Solve target = sum c_j chain_j over the support, exactly.

    Fraction-free forward elimination keeps every entry an integer;
    rationals appear only in the back-substitution at the end.
    """
    nr = cc.n_red
    cols = [cc.chain[j] for j in support]
    k = len(cols)
    M = [[int(col[i]) for col in cols] + [int(target[i])] for i in range(nr)]
    piv_cols: list[int] = []
    r = 0
    prev = 1
    for c in range(k):
        sel = next((i for i in range(r, nr) if M[i][c]), None)
        if sel is None:
            continue
        if sel != r:
            M[r], M[sel] = M[sel], M[r]
        p = M[r][c]
        pivot_row = M[r]
        for i in range(r + 1, nr):
            f = M[i][c]
            M[i] = [(p * a - f * b) // prev for a, b in zip(M[i], pivot_row)]
        prev = p
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    # rows past the rank are structurally zero; a leftover augmented
    # entry there means the system is inconsistent
    for i in range(r, nr):
        if M[i][k]:
            return False
    coeffs = [Fraction(0)] * k
    for idx in range(r - 1, -1, -1):
        c = piv_cols[idx]
        row = M[idx]
        s = Fraction(row[k])
        for c2 in range(c + 1, k):
            if row[c2] and coeffs[c2]:
                s -= row[c2] * coeffs[c2]
        q = s / row[c]
        if q < 0:
            return False
        coeffs[c] = q
    # recompute to guard against elimination slips
    for i in range(nr):
        total = sum(q * col[i] for q, col in zip(coeffs, cols) if q)
        if total != target[i]:
            return False
    return True


def _exact_membership(cc: _ChainCell, target: list[int]) -> bool | None:
    """Is target in the chain cone?  None when the exact budget is spent."""
    if cc.n_red > _EXACT_LP_DIM:
        return None
    if cc.chain:
        # supports repeat heavily across one round; replay recent hits
        for pos, support in enumerate(cc.support_cache):
            if _exact_support_solve(cc, support, target):
                if pos:
                    cc.support_cache.insert(0, cc.support_cache.pop(pos))
                return True
        A = cc.nnls_mat()
        b = np.array(target, dtype=np.float64)
        x, resid = _nnls(A, b)
        norm = max(1.0, float(np.abs(b).max()))
        if resid <= 1e-7 * norm:
            support = [int(j) for j in np.where(x > 1e-12)[0]]
            if len(support) <= cc.n_red and _exact_support_solve(
                cc, support, target
            ):
                cc.support_cache.insert(0, support)
                del cc.support_cache[_SUPPORT_CACHE:]
                return True
    if cc.lp_budget is not None:
        if cc.lp_budget <= 0:
            return None
        cc.lp_budget -= 1
    return cone_member(cc.chain_vecs(), Vector(target)) is not None


def _fast_uniform_certs(
    cc: _ChainCell,
    Hred: np.ndarray,
    cand_plus: np.ndarray,
    cand_minus: np.ndarray,
    settled: np.ndarray,
    signs: np.ndarray,
) -> None:
    """Anchor dominance for 0/1 rows of one fixed weight.

    A row certifies PLUS when its support can be matched one-to-one
    onto the support of a sampled anchor above zero, each matched
    coordinate provably at least the anchor's; MINUS mirrors with
    anchors below zero.  Small fixed weight keeps the bijection search
    to a handful of permutations, all evaluated vectorised.
    """
    nr = cc.n_red
    if not (~settled & (cand_plus | cand_minus)).any():
        return
    if Hred.min() < 0 or Hred.max() > 1:
        return
    weights = Hred.sum(axis=1)
    k = int(weights[0])
    if k < 1 or k > 4 or not (weights == k).all():
        return
    origin = nr
    ge = np.zeros((nr + 1, nr + 1), dtype=bool)
    for u in range(nr + 1):
        row = cc.reach[u]
        for v in range(nr + 1):
            ge[u, v] = bool((row >> v) & 1)
        ge[u, u] = True

    def supports(mask: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        rows = np.where(mask)[0]
        if rows.size == 0:
            return rows, np.zeros((0, k), dtype=np.int64)
        idx = np.nonzero(Hred[rows])[1].reshape(rows.size, k)
        return rows, idx

    def anchor_supports(raw: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
        out = []
        for a in raw[:_FAST_ANCHORS]:
            if min(a) < 0 or max(a) > 1 or sum(a) != k:
                return []
            out.append(tuple(i for i, v in enumerate(a) if v))
        return out

    perms = list(permutations(range(k)))
    rows_p, idx_p = supports(cand_plus & ~settled)
    if rows_p.size:
        hits = np.zeros(rows_p.size, dtype=bool)
        for a in anchor_supports(cc.above_raw):
            for perm in perms:
                m = np.ones(rows_p.size, dtype=bool)
                for t in range(k):
                    m &= ge[idx_p[:, t], a[perm[t]]]
                    if not m.any():
                        break
                hits |= m
            if hits.all():
                break
        chosen = rows_p[hits]
        settled[chosen] = True
        signs[chosen] = 1
    rows_m, idx_m = supports(cand_minus & ~settled)
    if rows_m.size:
        hits = np.zeros(rows_m.size, dtype=bool)
        for a in anchor_supports(cc.below_raw):
            for perm in perms:
                m = np.ones(rows_m.size, dtype=bool)
                for t in range(k):
                    m &= ge[np.full(rows_m.size, a[perm[t]]), idx_m[:, t]]
                    if not m.any():
                        break
                hits |= m
            if hits.all():
                break
        chosen = rows_m[hits]
        settled[chosen] = True
        signs[chosen] = -1


def infer_set_batch(
    cell: CellDescription, remaining: Sequence[tuple[int, Vector]]
) -> InferenceOutcome:
    """Decide every member of remaining against the sample cell."""
    sample = cell.sample
    assert sample is not None
    n = cell.dim
    inferred: dict[int, Sign] = {}
    label_of = {ident: lab for (ident, _), lab in zip(sample.members, sample.labels)}
    member_vec = {ident: v for ident, v in sample.members}
    rest: list[tuple[int, Vector]] = []
    for ident, v in remaining:
        if ident in label_of:
            assert member_vec[ident] == v, "identifier reuse"
            inferred[ident] = label_of[ident]
        else:
            rest.append((ident, v))
    if not rest:
        return InferenceOutcome(inferred, [])

    cc = _chain_cell(sample, n)
    if cc is None or any(v.ints is None for _, v in rest):
        undetermined: list[int] = []
        for ident, v in rest:
            s = infer_sign(cell, v)
            if s is None:
                undetermined.append(ident)
            else:
                inferred[ident] = s
        return InferenceOutcome(inferred, undetermined)

    ids = [ident for ident, _ in rest]
    N = len(rest)
    nr = cc.n_red

    Hfull = np.array([v.ints for _, v in rest], dtype=np.int64)
    if cc.kb is not None:
        if nr == 0:
            for ident in ids:
                inferred[ident] = Sign.ZERO
            return InferenceOutcome(inferred, [])
        KB = np.array(cc.kb, dtype=np.int64).T
        hmax = int(np.abs(Hfull).max(initial=0))
        kmax = int(np.abs(KB).max(initial=0))
        if hmax * kmax * n < _GEMM_GUARD:
            Hred = Hfull @ KB
        else:
            Hred = np.array(Hfull, dtype=object) @ np.array(KB, dtype=object)
            Hred = Hred.astype(object)
    else:
        Hred = Hfull

    zero_rows = ~np.any(Hred != 0, axis=1)
    signs = np.zeros(N, dtype=np.int8)
    settled = np.array(zero_rows, dtype=bool, copy=True)

    # an empty pool means nothing to screen with; every nonzero row is
    # then left undetermined and the caller labels it directly
    Y = _build_pool(cc) if not settled.all() else None
    if Y is not None and Y.shape[1]:
        hmax = int(abs(Hred).max()) if Hred.dtype == object else int(np.abs(Hred).max(initial=0))
        ymax = int(np.abs(Y).max(initial=0)) if Y.size else 0
        if Hred.dtype == object or (ymax and hmax * ymax * nr >= _GEMM_GUARD):
            D = np.array(Hred, dtype=object) @ np.array(Y, dtype=object)
            pos = np.array([[int(x) > 0 for x in row] for row in D], dtype=bool)
            neg = np.array([[int(x) < 0 for x in row] for row in D], dtype=bool)
            cand_plus = pos.all(axis=1)
            cand_minus = neg.all(axis=1)
        else:
            D = Hred @ Y
            cand_plus = (D > 0).all(axis=1)
            cand_minus = (D < 0).all(axis=1)
        cand_plus &= ~settled
        cand_minus &= ~settled

        if Hred.dtype != object:
            # units grounded straight on zero comparisons
            p_ok = np.array(
                [(cc.reach[c] >> nr) & 1 for c in range(nr)], dtype=bool
            )
            n_ok = np.array(
                [(cc.reach[nr] >> c) & 1 for c in range(nr)], dtype=bool
            )
            hp = Hred > 0
            hn = Hred < 0
            plus_units = cand_plus & ~(hp & ~p_ok).any(axis=1) & ~(hn & ~n_ok).any(axis=1)
            minus_units = cand_minus & ~(hn & ~p_ok).any(axis=1) & ~(hp & ~n_ok).any(axis=1)
            signs[plus_units] = 1
            signs[minus_units] = -1
            settled |= plus_units | minus_units

            _fast_uniform_certs(cc, Hred, cand_plus, cand_minus, settled, signs)

        leftovers = np.where(~settled & (cand_plus | cand_minus))[0]
        for i in leftovers:
            row = [int(x) for x in Hred[i]]
            target = row if cand_plus[i] else [-x for x in row]
            verdict = _exact_membership(cc, target)
            if verdict is True:
                signs[i] = 1 if cand_plus[i] else -1
                settled[i] = True
            elif verdict is False:
                # proven outside the cone: not inferable either way,
                # leave it for a direct label
                settled[i] = True
        still = np.where(~settled & (cand_plus | cand_minus))[0]
        for i in still:
            row = [int(x) for x in Hred[i]]
            target = row if cand_plus[i] else [-x for x in row]
            if _anchored_cert(target, cc):
                signs[i] = 1 if cand_plus[i] else -1
                settled[i] = True

    undetermined = []
    for i, ident in enumerate(ids):
        if zero_rows[i]:
            inferred[ident] = Sign.ZERO
        elif settled[i] and signs[i] > 0:
            inferred[ident] = Sign.PLUS
        elif settled[i] and signs[i] < 0:
            inferred[ident] = Sign.MINUS
        else:
            undetermined.append(ident)
    return InferenceOutcome(inferred, undetermined)
