"""Realizations of (weighted) matrix multiplication inside coherent
configurations: the triangle predicate, realization verification, triple
product properties, action-based realizations, the diagonal-action family,
symmetric-power realizations, and wreath-product conjugation realizations.

Conventions: a realization of <l,m,n> is three injective maps alpha (l x m),
beta (m x n), gamma (n x l) into class ids such that alpha(a,b'), beta(b,c'),
gamma(c,a') form a triangle iff a = a', b = b', c = c'. Triangles are read
off the intersection tensor: (i,j,k) is a triangle iff p^{k*}_{i,j} > 0."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .configuration import CoherentConfiguration
from .constructions import group_association_scheme, schurian, symmetric_power
from .groups import WreathGroup, conjugation_action, count_conjugacy_wreath


class RealizationInvalid(Exception):
    """Verification failure. witness is ("injective", map_name, idx1, idx2)
    for an injectivity break, ("disjoint", ...) for overlapping image sets,
    or ("triangle", a, a2, b, b2, c, c2, kind) for the first violating
    6-tuple, kind "extra" (unexpected triangle) or "missing"."""

    def __init__(self, witness, message):
        super().__init__(message)
        self.witness = witness


class HypothesisViolation(Exception):
    """The action-realization hypothesis failed; witness is (f,g,h,a,b,c)
    with f g h = 1 where the fixed-point conclusion breaks."""

    def __init__(self, witness, message):
        super().__init__(message)
        self.witness = witness


class Realization:
    """Three injective maps into class ids, stored as integer arrays of
    shapes (l, m), (m, n) and (n, l)."""

    def __init__(self, alpha, beta, gamma):
        self.alpha = np.asarray(alpha, dtype=np.int64)
        self.beta = np.asarray(beta, dtype=np.int64)
        self.gamma = np.asarray(gamma, dtype=np.int64)
        if self.alpha.ndim != 2 or self.beta.ndim != 2 or self.gamma.ndim != 2:
            raise ValueError("maps must be two-dimensional")
        l, m = self.alpha.shape
        m2, n = self.beta.shape
        n2, l2 = self.gamma.shape
        if m2 != m or n2 != n or l2 != l:
            raise ValueError(
                "map shapes %s %s %s are inconsistent"
                % (self.alpha.shape, self.beta.shape, self.gamma.shape)
            )
        self.dims = (l, m, n)

    def __repr__(self):
        return "<realization %d,%d,%d>" % self.dims


def _tensor_of(obj):
    return obj.intersection() if hasattr(obj, "intersection") else obj


def is_triangle(config, i, j, k):
    """Classes (i, j, k) form a triangle: there are points x, y, z with
    (x,y) in R_i, (y,z) in R_j, (z,x) in R_k. Equivalent to p^{k*}_{i,j} > 0."""
    t = _tensor_of(config)
    return t.slice(i, j).get(t.star(k), 0) > 0


def _check_injective(name, arr):
    flat = arr.reshape(-1)
    vals, first = np.unique(flat, return_index=True)
    if len(vals) != flat.size:
        seen = {}
        for idx, v in enumerate(flat.tolist()):
            if v in seen:
                raise RealizationInvalid(
                    ("injective", name, seen[v], idx),
                    "%s repeats class %d at flat indices %d and %d"
                    % (name, v, seen[v], idx),
                )
            seen[v] = idx


def verify_realization(config, real):
    """Exhaustive check of the realization conditions: injectivity of the
    three maps, then the triangle-iff-matched sweep over all pairs of map
    values ((a,b') x (b,c')), reading triangles from the intersection data.
    Raises RealizationInvalid with the first violating witness."""
    t = _tensor_of(config)
    l, m, n = real.dims
    for name, arr in (
        ("alpha", real.alpha),
        ("beta", real.beta),
        ("gamma", real.gamma),
    ):
        _check_injective(name, arr)
    # owner[star(gamma(c,a))] = (c, a): z-classes k with p^{k*}_{i,j} > 0
    # are exactly star(k') for k' in slice(i,j)
    owner = {}
    for c in range(n):
        for a in range(l):
            owner[t.star(int(real.gamma[c, a]))] = (c, a)
    alpha = real.alpha
    beta = real.beta
    for a in range(l):
        for bp in range(m):
            i = int(alpha[a, bp])
            for b in range(m):
                for cp in range(n):
                    j = int(beta[b, cp])
                    zs = set()
                    for kp in t.slice(i, j):
                        hit = owner.get(kp)
                        if hit is not None:
                            zs.add(hit)
                    if b == bp:
                        want = {(cp, a)}
                    else:
                        want = set()
                    if zs == want:
                        continue
                    extra = zs - want
                    if extra:
                        c, ap = sorted(extra)[0]
                        raise RealizationInvalid(
                            ("triangle", a, ap, b, bp, c, cp, "extra"),
                            "unexpected triangle for a=%d a'=%d b=%d b'=%d "
                            "c=%d c'=%d" % (a, ap, b, bp, c, cp),
                        )
                    c, ap = sorted(want - zs)[0]
                    raise RealizationInvalid(
                        ("triangle", a, ap, b, bp, c, cp, "missing"),
                        "matched triple is not a triangle for a=%d a'=%d "
                        "b=%d b'=%d c=%d c'=%d" % (a, ap, b, bp, c, cp),
                    )
    return True


def verify_simultaneous(config, reals):
    """Simultaneous realization check: per-component injectivity, pairwise
    disjoint alpha images (likewise beta, gamma), and the sweep demanding a
    triangle exactly for matched indices within one component."""
    t = _tensor_of(config)
    reals = list(reals)
    for slot in ("alpha", "beta", "gamma"):
        seen = {}
        for ci, real in enumerate(reals):
            arr = getattr(real, slot)
            _check_injective("%s[%d]" % (slot, ci), arr)
            for v in arr.reshape(-1).tolist():
                if v in seen and seen[v] != ci:
                    raise RealizationInvalid(
                        ("disjoint", slot, seen[v], ci, v),
                        "%s images of components %d and %d share class %d"
                        % (slot, seen[v], ci, v),
                    )
                seen[v] = ci
    owner = {}
    for ci, real in enumerate(reals):
        nn, ll = real.gamma.shape
        for c in range(nn):
            for a in range(ll):
                owner[t.star(int(real.gamma[c, a]))] = (ci, c, a)
    for ia, ra in enumerate(reals):
        la, ma = ra.alpha.shape
        for a in range(la):
            for bp in range(ma):
                i = int(ra.alpha[a, bp])
                for ib, rb in enumerate(reals):
                    mb, nb = rb.beta.shape
                    for b in range(mb):
                        for cp in range(nb):
                            j = int(rb.beta[b, cp])
                            zs = set()
                            for kp in t.slice(i, j):
                                hit = owner.get(kp)
                                if hit is not None:
                                    zs.add(hit)
                            if ia == ib and b == bp:
                                want = {(ia, cp, a)}
                            else:
                                want = set()
                            if zs != want:
                                raise RealizationInvalid(
                                    (
                                        "triangle",
                                        (ia, a),
                                        (ib, b, bp),
                                        (cp,),
                                        sorted(zs - want or want - zs)[0],
                                    ),
                                    "simultaneous triangle condition fails "
                                    "between components %d and %d at "
                                    "a=%d b'=%d b=%d c'=%d"
                                    % (ia, ib, a, bp, b, cp),
                                )
    return True


def fibers_realization(config, check=True):
    """<f,f,f> from one representative point per fiber: alpha(a,b) is the
    class of (x_a, x_b), and the same matrix serves beta and gamma."""
    fs = config.fibers()
    reps = [int(part[0]) for part in fs.parts]
    R = config.matrix[np.ix_(reps, reps)].astype(np.int64)
    real = Realization(R, R, R)
    if check:
        verify_realization(config, real)
    return real


# ---------------------------------------------------------------------------
# triple product properties


@dataclass
class TripleFamily:
    """n triples of non-empty subsets of a finite group, elements as codes."""

    group: object
    triples: tuple

    def __post_init__(self):
        triples = []
        order = self.group.order
        for abc in self.triples:
            if len(abc) != 3:
                raise ValueError("each entry must be a triple of subsets")
            sets = []
            for part in abc:
                part = tuple(sorted(set(int(x) for x in part)))
                if not part:
                    raise ValueError("subsets must be non-empty")
                if part[0] < 0 or part[-1] >= order:
                    raise ValueError("element out of range")
                sets.append(part)
            triples.append(tuple(sets))
        self.triples = tuple(triples)

    def __len__(self):
        return len(self.triples)


def tpp_verify(group, S, T, U):
    """Triple product property: s^-1 s' t^-1 t' u^-1 u' = 1 only for s = s',
    t = t', u = u'. Exhaustive over all 6-tuples."""
    Tb = group.table()
    inv = group.inverse_vector()
    S = [int(x) for x in S]
    T = [int(x) for x in T]
    U = [int(x) for x in U]
    qs = [(int(Tb[inv[a], b]), a == b) for a in S for b in S]
    qt = [(int(Tb[inv[a], b]), a == b) for a in T for b in T]
    qu = [(int(Tb[inv[a], b]), a == b) for a in U for b in U]
    for q1, triv1 in qs:
        for q2, triv2 in qt:
            left = int(Tb[q1, q2])
            for q3, triv3 in qu:
                if Tb[left, q3] == 0 and not (triv1 and triv2 and triv3):
                    return False
    return True


def simultaneous_tpp_verify(family):
    """Simultaneous triple product property of a TripleFamily: the product
    a_i^-1 a_j' b_j^-1 b_k' c_k^-1 c_i' is trivial only when i = j = k and
    all three pairs match. Exhaustive over index triples and elements."""
    g = family.group
    Tb = g.table()
    inv = g.inverse_vector()
    n = len(family.triples)
    A = [t[0] for t in family.triples]
    B = [t[1] for t in family.triples]
    C = [t[2] for t in family.triples]
    for i in range(n):
        for j in range(n):
            qa = [
                (int(Tb[inv[a], ap]), a == ap) for a in A[i] for ap in A[j]
            ]
            for k in range(n):
                qb = [
                    (int(Tb[inv[b], bp]), b == bp)
                    for b in B[j]
                    for bp in B[k]
                ]
                qc = [
                    (int(Tb[inv[c], cp]), c == cp)
                    for c in C[k]
                    for cp in C[i]
                ]
                diag = i == j == k
                for q1, t1 in qa:
                    for q2, t2 in qb:
                        left = int(Tb[q1, q2])
                        for q3, t3 in qc:
                            if Tb[left, q3] == 0:
                                if not (diag and t1 and t2 and t3):
                                    return False
    return True


# ---------------------------------------------------------------------------
# action realizations


def action_realization(action, A, B, C, config=None, check="full"):
    """Realization of <|A|,|B|,|C|> inside schurian(action), after verifying
    the fixed-point hypothesis: for every f, g, h in the acting group with
    f g h = 1, if fa lands in A, gb in B and hc in C (a in A etc.), then all
    three are fixed. Quantifying over f g h = 1 pairs (f, g) is exhaustive
    since h is determined. Raises HypothesisViolation with a witness."""
    A = [int(x) for x in A]
    B = [int(x) for x in B]
    C = [int(x) for x in C]
    if not A or not B or not C:
        raise ValueError("subsets must be non-empty")
    for name, part in (("A", A), ("B", B), ("C", C)):
        if len(set(part)) != len(part):
            raise ValueError("repeated point in %s" % name)
        if min(part) < 0 or max(part) >= action.n_points:
            raise ValueError("point out of range in %s" % name)
    g = action.group
    Tact = action.table
    Tg = g.table()
    inv = g.inverse_vector()
    order = g.order

    def prof(part):
        cols = np.asarray(part)
        img = Tact[:, cols]  # img[f, idx] = f . part[idx]
        inside = np.zeros(action.n_points, dtype=bool)
        inside[cols] = True
        hit = inside[img]
        moved = img != cols[None, :]
        return hit.any(axis=1), (hit & moved).any(axis=1), img, inside

    QA, badA, imgA, inA = prof(A)
    QB, badB, imgB, inB = prof(B)
    QC, badC, imgC, inC = prof(C)
    for f in range(order):
        if not QA[f]:
            continue
        hrow = inv[Tg[f]]  # h with f g h = 1 for each g
        viol = QB & QC[hrow] & (badA[f] | badB | badC[hrow])
        bad_g = np.flatnonzero(viol)
        if len(bad_g):
            gg = int(bad_g[0])
            hh = int(hrow[gg])

            def pick(part, img, inside, frow, prefer_moved):
                row = img[frow]
                inside_row = inside[row]
                if prefer_moved:
                    cand = np.flatnonzero(inside_row & (row != np.asarray(part)))
                    if len(cand):
                        return part[int(cand[0])]
                return part[int(np.flatnonzero(inside_row)[0])]

            a = pick(A, imgA, inA, f, bool(badA[f]))
            b = pick(B, imgB, inB, gg, not badA[f] and bool(badB[gg]))
            c = pick(C, imgC, inC, hh, not badA[f] and not badB[gg])
            raise HypothesisViolation(
                (f, gg, hh, a, b, c),
                "hypothesis fails at f=%d g=%d h=%d a=%d b=%d c=%d"
                % (f, gg, hh, a, b, c),
            )
    if config is None:
        config = schurian(action, check=check)
    M = config.matrix
    alpha = M[np.ix_(A, B)]
    beta = M[np.ix_(B, C)]
    gamma = M[np.ix_(C, A)]
    real = Realization(alpha, beta, gamma)
    verify_realization(config, real)
    return config, real


def diagonal_action(n):
    """Z/nZ acting on (Z/nZ)^2 by simultaneous translation. Point code of
    (x1, x2) is x1*n + x2."""
    from .groups import CyclicGroup, GroupAction

    pts = n * n
    x1, x2 = np.divmod(np.arange(pts), n)
    tab = np.empty((n, pts), dtype=np.int32)
    for gg in range(n):
        tab[gg] = ((x1 + gg) % n) * n + (x2 + gg) % n
    return GroupAction(CyclicGroup(n), tab, "diagonal-translation")


def diagonal_example(n, S=None, check="full"):
    """The diagonal-action configuration on n^2 points (rank n^3) with one
    <n,n,n> component per member of a 3AP-free set S in Z/nZ:
    alpha_i(x,y) = class (x, i-x, y), beta_i(y,z) = (y, i-y, z),
    gamma_i(z,x) = (z, -2i-z, x). Triangles across components need
    i + j = 2k, which the 3AP-free condition pins to i = j = k."""
    from .sets import APFreeSet, greedy_ap_free

    if S is None:
        S = greedy_ap_free(n)
    elif not isinstance(S, APFreeSet):
        S = APFreeSet(n, tuple(S))  # raises if a progression exists
    if S.n != n:
        raise ValueError("S lives in Z/%d, expected Z/%d" % (S.n, n))
    if len(S) == 0:
        raise ValueError("need a non-empty 3AP-free set")
    cfg = schurian(diagonal_action(n), check=check)
    M = cfg.matrix

    def pt(u, v):
        return (u % n) * n + (v % n)

    xs = np.arange(n)
    reals = []
    for i in S.elements:
        rows = np.array([pt(0, x) for x in xs])
        cols_ab = np.array([pt(i, i + y) for y in xs])
        alpha = M[np.ix_(rows, cols_ab)].astype(np.int64)
        beta = alpha.copy()  # beta_i(y,z) = (y, i-y, z), same lookup grid
        cols_g = np.array([pt(-2 * i, x - 2 * i) for x in xs])
        gamma = M[np.ix_(rows, cols_g)].astype(np.int64)
        reals.append(Realization(alpha, beta, gamma))
    verify_simultaneous(cfg, reals)
    return cfg, reals


# ---------------------------------------------------------------------------
# symmetric-power realizations


class SymmetricPowerView:
    """Intersection data of Sym^k C computed from C's tensor without
    materializing the point set. Class ids are interned sorted k-tuples of
    base class ids; slice() sums coordinate-product counts over all
    alignments of the two multisets, divided by the orbit size of the
    result multiset."""

    def __init__(self, base_tensor, k):
        self.base = base_tensor
        self.k = k
        self.rank = math.comb(base_tensor.rank + k - 1, k)
        self._ids = {}
        self._tuples = []

    def intern(self, multiset):
        key = tuple(sorted(int(v) for v in multiset))
        if len(key) != self.k:
            raise ValueError("need %d coordinates" % self.k)
        got = self._ids.get(key)
        if got is None:
            got = len(self._tuples)
            self._ids[key] = got
            self._tuples.append(key)
        return got

    def tuple_of(self, cid):
        return self._tuples[cid]

    def star(self, cid):
        t = self.tuple_of(cid)
        return self.intern(self.base.star(v) for v in t)

    def slice(self, i, j):
        ti = self.tuple_of(i)
        tj = self.tuple_of(j)
        acc = {}
        for pi in set(itertools.permutations(ti)):
            for pj in set(itertools.permutations(tj)):
                parts = []
                for c in range(self.k):
                    s = self.base.slice(pi[c], pj[c])
                    if not s:
                        break
                    parts.append(list(s.items()))
                else:
                    for combo in itertools.product(*parts):
                        key = tuple(sorted(kc for kc, _ in combo))
                        w = 1
                        for _, pc in combo:
                            w *= pc
                        acc[key] = acc.get(key, 0) + w
        out = {}
        for key, total in acc.items():
            orbit = len(set(itertools.permutations(key)))
            if total % orbit:
                raise AssertionError(
                    "count %d not divisible by orbit size %d" % (total, orbit)
                )
            out[self.intern(key)] = total // orbit
        return out


def _product_maps(reals, combine):
    """Coordinate-wise product of the maps of k realizations, each value
    passed through combine(tuple_of_base_classes)."""
    k = len(reals)
    ls = [r.dims[0] for r in reals]
    ms = [r.dims[1] for r in reals]
    ns = [r.dims[2] for r in reals]

    def build(shape_rows, shape_cols, pick):
        rows = list(itertools.product(*[range(s) for s in shape_rows]))
        cols = list(itertools.product(*[range(s) for s in shape_cols]))
        arr = np.empty((len(rows), len(cols)), dtype=np.int64)
        for ri, rv in enumerate(rows):
            for ci, cv in enumerate(cols):
                arr[ri, ci] = combine(
                    tuple(pick(reals[c], rv[c], cv[c]) for c in range(k))
                )
        return arr

    alpha = build(ls, ms, lambda r, x, y: int(r.alpha[x, y]))
    beta = build(ms, ns, lambda r, x, y: int(r.beta[x, y]))
    gamma = build(ns, ls, lambda r, x, y: int(r.gamma[x, y]))
    return Realization(alpha, beta, gamma)


def sympow_realization(config, reals, materialize="auto", point_cap=2000):
    """Realization of the product dims inside Sym^k C, built coordinate-wise
    from a verified simultaneous realization (one map triple per coordinate).
    materialize=True builds Sym^k C and verifies there; False verifies
    against the staged view; "auto" materializes when n^k <= point_cap.
    Returns (configuration or view, realization)."""
    reals = list(reals)
    k = len(reals)
    if k < 1:
        raise ValueError("need at least one component")
    verify_simultaneous(config, reals)
    n_big = config.n_points**k
    if materialize == "auto":
        materialize = n_big <= point_cap
    if materialize:
        if n_big > point_cap:
            raise ValueError(
                "%d points exceed the materialization cap %d"
                % (n_big, point_cap)
            )
        big = symmetric_power(config, k, point_cap=point_cap)
        index = big.label_index()
        real = _product_maps(reals, lambda t: index[tuple(sorted(t))])
        verify_realization(big, real)
        return big, real
    view = SymmetricPowerView(config.intersection(), k)
    real = _product_maps(reals, view.intern)
    verify_realization(view, real)
    return view, real


# ---------------------------------------------------------------------------
# wreath-product conjugation realizations


def grp_as_realization(family, check="full"):
    """From a TripleFamily with the simultaneous triple product property in
    an abelian group H: embed the product sets into G = S_n lx H^n, take the
    group association scheme of G (the two-sided conjugation action), and
    realize <prod |A_i|, prod |B_i|, prod |C_i|>. The ambient rank equals
    count_conjugacy_wreath(n, |H|)."""
    H = family.group
    if not H.is_abelian():
        raise ValueError("base group must be abelian")
    if not simultaneous_tpp_verify(family):
        raise ValueError("family fails the simultaneous triple product property")
    n = len(family.triples)
    G = WreathGroup(n, H)
    ident = tuple(range(n))

    def embed(parts):
        return [
            G.encode(vec, ident)
            for vec in itertools.product(*parts)
        ]

    A = embed([t[0] for t in family.triples])
    B = embed([t[1] for t in family.triples])
    C = embed([t[2] for t in family.triples])
    act = conjugation_action(G)
    cfg = schurian(act, check=check)
    expected_rank = count_conjugacy_wreath(n, H.order)
    if cfg.rank != expected_rank:
        raise AssertionError(
            "ambient rank %d, expected %d conjugacy classes"
            % (cfg.rank, expected_rank)
        )
    cfg2, real = action_realization(act, A, B, C, config=cfg)
    return cfg, real


def gas_realization_matches(family):
    """Cross-check: the ambient scheme of grp_as_realization equals the
    group association scheme built directly."""
    H = family.group
    n = len(family.triples)
    G = WreathGroup(n, H)
    cfg, _ = grp_as_realization(family)
    direct = group_association_scheme(G)
    return bool(np.array_equal(cfg.matrix, direct.matrix))


# ---------------------------------------------------------------------------
# fixture searchers (deterministic, exist to generate frozen test data)


def _nonempty_subsets(universe, min_size=1, max_size=None, anchored=False):
    universe = list(universe)
    top = len(universe) if max_size is None else min(max_size, len(universe))
    out = []
    for size in range(min_size, top + 1):
        for combo in itertools.combinations(universe, size):
            if anchored and combo[0] != universe[0]:
                continue
            out.append(combo)
    return out


def search_tpp(group, sizes, anchored=True):
    """First (S, T, U) with the given sizes passing tpp_verify, in
    lexicographic order. Translation freedom lets each set be anchored at
    the smallest element for abelian groups."""
    anchor = anchored and group.is_abelian()
    universe = range(group.order)
    for S in _nonempty_subsets(universe, sizes[0], sizes[0], anchor):
        for T in _nonempty_subsets(universe, sizes[1], sizes[1], anchor):
            for U in _nonempty_subsets(universe, sizes[2], sizes[2], anchor):
                if tpp_verify(group, S, T, U):
                    return (S, T, U)
    return None


def search_simultaneous_tpp(group, shapes, anchored=True):
    """First TripleFamily with the given per-triple subset sizes passing
    simultaneous_tpp_verify; shapes is a list of (|A_i|,|B_i|,|C_i|).
    Deterministic lexicographic DFS with incremental verification: the
    partial family of the first t triples must itself pass before any
    extension is attempted."""
    anchor = anchored and group.is_abelian()
    universe = range(group.order)
    slots = []
    for t, (sa, sb, sc) in enumerate(shapes):
        anchor_here = anchor and t == 0
        slots.append(
            (
                _nonempty_subsets(universe, sa, sa, anchor_here),
                _nonempty_subsets(universe, sb, sb, anchor_here),
                _nonempty_subsets(universe, sc, sc, anchor_here),
            )
        )

    def extend(prefix, t):
        if t == len(shapes):
            return TripleFamily(group, tuple(prefix))
        for A in slots[t][0]:
            for B in slots[t][1]:
                for C in slots[t][2]:
                    cand = prefix + [(A, B, C)]
                    if simultaneous_tpp_verify(TripleFamily(group, tuple(cand))):
                        got = extend(cand, t + 1)
                        if got is not None:
                            return got
        return None

    return extend([], 0)


# ---------------------------------------------------------------------------
# real file format


def write_real(real, path):
    """Write "real 1" text: dims line then alpha/beta/gamma blocks of
    "a b -> class" lines."""

    def emit(fh):
        l, m, n = real.dims
        fh.write("real 1\n")
        fh.write("dims %d %d %d\n" % (l, m, n))
        for name, arr in (
            ("alpha", real.alpha),
            ("beta", real.beta),
            ("gamma", real.gamma),
        ):
            fh.write("%s\n" % name)
            rows, cols = arr.shape
            for x in range(rows):
                for y in range(cols):
                    fh.write("%d %d -> %d\n" % (x, y, int(arr[x, y])))

    if hasattr(path, "write"):
        emit(path)
    else:
        with open(path, "w") as fh:
            emit(fh)


def read_real(path):
    """Parse a "real 1" file back into a Realization (no configuration
    context, so verification happens at the call site)."""

    def collect(fh):
        out = []
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                out.append(line)
        return out

    if hasattr(path, "read"):
        lines = collect(path)
    else:
        with open(path) as fh:
            lines = collect(fh)
    if not lines or lines[0].split() != ["real", "1"]:
        raise ValueError("not a real 1 file")
    head = lines[1].split()
    if len(head) != 4 or head[0] != "dims":
        raise ValueError("bad dims line %r" % lines[1])
    l, m, n = (int(v) for v in head[1:])
    shapes = {"alpha": (l, m), "beta": (m, n), "gamma": (n, l)}
    arrays = {}
    pos = 2
    for name in ("alpha", "beta", "gamma"):
        if pos >= len(lines) or lines[pos] != name:
            raise ValueError("expected %r block at line %d" % (name, pos))
        pos += 1
        rows, cols = shapes[name]
        arr = np.full((rows, cols), -1, dtype=np.int64)
        for _ in range(rows * cols):
            if pos >= len(lines):
                raise ValueError("truncated %s block" % name)
            parts = lines[pos].split()
            if len(parts) != 4 or parts[2] != "->":
                raise ValueError("bad map line %r" % lines[pos])
            x, y, cls = int(parts[0]), int(parts[1]), int(parts[3])
            if not (0 <= x < rows and 0 <= y < cols):
                raise ValueError("index out of range in %r" % lines[pos])
            arr[x, y] = cls
            pos += 1
        if (arr < 0).any():
            raise ValueError("missing entries in %s block" % name)
        arrays[name] = arr
    if pos != len(lines):
        raise ValueError("trailing content after gamma block")
    return Realization(arrays["alpha"], arrays["beta"], arrays["gamma"])
