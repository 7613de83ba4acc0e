"""Coherent configurations: class-matrix representation, axiom verification,
intersection numbers, star involution, fibers, and the ccfg text format.

A configuration on n points is stored as an n x n matrix of class ids in
[0, r). Class ids are normalized: classes appearing on the diagonal come
first (ordered by their smallest point), the rest follow in row-major order
of first occurrence. Verification is a full sweep by default; constructions
in other modules always re-verify their output through from_class_matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

POINT_CAP = 20000
DENSE_TENSOR_CAP = 512


class AxiomViolation(Exception):
    """A defining axiom fails. axiom is 1, 2 or 3; witness is a tuple of
    points/classes pinpointing the failure."""

    def __init__(self, axiom, witness, message):
        self.axiom = axiom
        self.witness = witness
        self.message = message
        super().__init__("axiom (%d): %s; witness %s" % (axiom, message, witness))


def _normalization_perm(matrix, r):
    """Old id -> new id permutation: diagonal classes first by smallest
    point, then the rest by first row-major occurrence."""
    diag = np.diagonal(matrix)
    diag_classes, diag_first = np.unique(diag, return_index=True)
    diag_order = diag_classes[np.argsort(diag_first, kind="stable")]
    diag_set = set(int(c) for c in diag_order)
    flat_classes, flat_first = np.unique(matrix, return_index=True)
    rest = [
        int(c)
        for c in flat_classes[np.argsort(flat_first, kind="stable")]
        if int(c) not in diag_set
    ]
    perm = np.full(r, -1, dtype=np.int64)
    for new, old in enumerate([int(c) for c in diag_order] + rest):
        perm[old] = new
    assert perm.min() >= 0
    return perm


def _first_occurrences(matrix, r):
    """Arrays x0, y0 with (x0[c], y0[c]) the row-major first pair of class c."""
    n = matrix.shape[0]
    classes, first = np.unique(matrix, return_index=True)
    x0 = np.empty(r, dtype=np.int64)
    y0 = np.empty(r, dtype=np.int64)
    x0[classes] = first // n
    y0[classes] = first % n
    return x0, y0


def _check_axiom1(matrix, r):
    diag = np.diagonal(matrix)
    on_diag = np.bincount(diag, minlength=r)
    everywhere = np.bincount(matrix.ravel(), minlength=r)
    for c in np.unique(diag):
        c = int(c)
        if everywhere[c] != on_diag[c]:
            pos = np.argwhere(matrix == c)
            for x, y in pos:
                if x != y:
                    raise AxiomViolation(
                        1,
                        (int(x), int(y), c),
                        "class %d meets the diagonal but contains (%d,%d)"
                        % (c, int(x), int(y)),
                    )


def _check_axiom2(matrix, r, x0, y0):
    star = matrix[y0, x0].astype(np.int64)  # transpose class of each first pair
    transposed = star[matrix]
    if not np.array_equal(transposed, matrix.T):
        bad = np.argwhere(transposed != matrix.T)
        x, y = int(bad[0][0]), int(bad[0][1])
        c = int(matrix[x, y])
        raise AxiomViolation(
            2,
            (x, y, c, int(star[c]), int(matrix[y, x])),
            "transpose of class %d is split between classes %d and %d"
            % (c, int(star[c]), int(matrix[y, x])),
        )
    assert np.array_equal(star[star], np.arange(r)), "star not an involution"
    return star


def _profile_mismatch_witness(matrix, r, x, y, xr, yr):
    """Locate a composition pair (i,j) whose z-count differs between the
    pairs (x,y) and (xr,yr) of the same class."""
    m64 = matrix.astype(np.int64)
    keys_here = m64[x] * r + m64[:, y]
    keys_ref = m64[xr] * r + m64[:, yr]
    uh, ch = np.unique(keys_here, return_counts=True)
    here = dict(zip(uh.tolist(), ch.tolist()))
    ur, cr = np.unique(keys_ref, return_counts=True)
    ref = dict(zip(ur.tolist(), cr.tolist()))
    for key in sorted(set(here) | set(ref)):
        if here.get(key, 0) != ref.get(key, 0):
            i, j = divmod(key, r)
            return (
                int(x),
                int(y),
                int(xr),
                int(yr),
                int(i),
                int(j),
                here.get(key, 0),
                ref.get(key, 0),
            )
    raise AssertionError("no differing composition count found")


def _check_axiom3(matrix, r, x0, y0, rows=None):
    """Sweep rows, comparing every pair's composition profile against the
    profile of the first representative of its class. The profile of (x,y)
    is the multiset over z of (class(x,z), class(z,y)), encoded as one
    int64 key per z and compared in sorted order."""
    n = matrix.shape[0]
    m64 = matrix.astype(np.int64)
    by_row = [[] for _ in range(n)]
    for c in range(r):
        by_row[x0[c]].append(c)
    ref = np.empty((n, r), dtype=np.int64)
    seen = np.zeros(r, dtype=bool)
    chunk = n if n <= 2048 else max(256, (1 << 22) // n)
    # rows must cover all first-occurrence rows and come in ascending order,
    # so a reference profile always exists by the time a class recurs
    row_iter = range(n) if rows is None else rows
    for x in row_iter:
        base = m64[x] * r
        for ys in range(0, n, chunk):
            ye = min(n, ys + chunk)
            keys = base[:, None] + m64[:, ys:ye]  # keys[z, y-ys]
            keys.sort(axis=0)
            for c in by_row[x]:
                if ys <= y0[c] < ye and not seen[c]:
                    ref[:, c] = keys[:, y0[c] - ys]
                    seen[c] = True
            row_classes = matrix[x, ys:ye]
            assert seen[row_classes].all()
            expected = ref[:, row_classes]
            if not np.array_equal(keys, expected):
                bad_cols = np.flatnonzero((keys != expected).any(axis=0))
                yy = ys + int(bad_cols[0])
                c = int(matrix[x, yy])
                wit = _profile_mismatch_witness(
                    matrix, r, x, yy, int(x0[c]), int(y0[c])
                )
                raise AxiomViolation(
                    3,
                    wit,
                    "pairs (%d,%d) and (%d,%d) of class %d disagree on the "
                    "count for composition (%d,%d): %d vs %d"
                    % (
                        wit[0],
                        wit[1],
                        wit[2],
                        wit[3],
                        c,
                        wit[4],
                        wit[5],
                        wit[6],
                        wit[7],
                    ),
                )


class CoherentConfiguration:
    """Immutable after construction. Build through from_class_matrix (or the
    constructions module); direct __init__ expects normalized input."""

    def __init__(self, matrix, rank, verification, class_labels=None):
        self.matrix = matrix
        self.n_points = matrix.shape[0]
        self.rank = rank
        self.verification = verification  # "full", "sampled", or "trusted"
        self.class_labels = class_labels
        self._x0, self._y0 = _first_occurrences(matrix, rank)
        self._star = None
        self._sizes = None
        self._tensor = None
        self._fibers = None
        self._commutative = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_class_matrix(cls, matrix, rank=None, class_labels=None, check="full"):
        """Normalize class ids, verify the three axioms, return the verified
        configuration. check: "full" (default), "sampled" (spot-check axiom 3,
        configuration reports itself unchecked), or "trusted" (skip axiom 3)."""
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("class matrix must be square")
        n = matrix.shape[0]
        if n < 1:
            raise ValueError("need at least one point")
        if n > POINT_CAP:
            raise ValueError("point count %d exceeds cap %d" % (n, POINT_CAP))
        if not np.issubdtype(matrix.dtype, np.integer):
            if not np.array_equal(matrix, matrix.astype(np.int64)):
                raise ValueError("class ids must be integers")
        matrix = matrix.astype(np.int32)
        if matrix.min() < 0:
            raise ValueError("negative class id")
        present = np.unique(matrix)
        r = int(matrix.max()) + 1 if rank is None else rank
        if len(present) != r or int(present[-1]) != r - 1:
            missing = sorted(set(range(r)) - set(present.tolist()))
            raise ValueError("class ids not onto [0,%d): missing %s" % (r, missing))
        perm = _normalization_perm(matrix, r)
        matrix = perm[matrix].astype(np.int32)
        if class_labels is not None:
            relabeled = [None] * r
            for old, lab in enumerate(class_labels):
                relabeled[perm[old]] = lab
            class_labels = relabeled
        x0, y0 = _first_occurrences(matrix, r)
        _check_axiom1(matrix, r)
        _check_axiom2(matrix, r, x0, y0)
        if check == "full":
            _check_axiom3(matrix, r, x0, y0)
            verification = "full"
        elif check == "sampled":
            sample = sorted(set(x0.tolist()) | set(range(0, n, max(1, n // 8))))
            _check_axiom3(matrix, r, x0, y0, rows=sample)
            verification = "sampled"
        elif check == "trusted":
            verification = "trusted"
        else:
            raise ValueError("check must be full, sampled or trusted")
        return cls(matrix, r, verification, class_labels)

    # -- basic structure ----------------------------------------------

    def rep_pair(self, i):
        """Row-major first pair of class i."""
        return int(self._x0[i]), int(self._y0[i])

    def star_vector(self):
        if self._star is None:
            self._star = self.matrix[self._y0, self._x0].astype(np.int64)
        return self._star

    def star(self, i):
        return int(self.star_vector()[i])

    def class_sizes(self):
        if self._sizes is None:
            self._sizes = np.bincount(self.matrix.ravel(), minlength=self.rank)
        return self._sizes

    def adjacency_matrix(self, i):
        if not 0 <= i < self.rank:
            raise IndexError("class id %d out of range" % i)
        return (self.matrix == i).astype(np.int64)

    def fibers(self):
        if self._fibers is None:
            diag = np.diagonal(self.matrix)
            fiber_classes = sorted(int(c) for c in np.unique(diag))
            point_fiber = np.searchsorted(fiber_classes, diag)
            parts = [np.flatnonzero(diag == c) for c in fiber_classes]
            self._fibers = FiberSet(fiber_classes, point_fiber, parts)
        return self._fibers

    @property
    def n_fibers(self):
        return len(self.fibers().fiber_classes)

    # -- predicates -----------------------------------------------------

    def is_association_scheme(self):
        return self.n_fibers == 1

    def is_symmetric(self):
        return bool(np.array_equal(self.star_vector(), np.arange(self.rank)))

    def is_commutative(self):
        if self._commutative is None:
            t = self.intersection()
            self._commutative = all(
                t.slice(i, j) == t.slice(j, i)
                for i in range(self.rank)
                for j in range(i + 1, self.rank)
            )
        return self._commutative

    def intersection(self):
        if self._tensor is None:
            self._tensor = _build_tensor(self)
        return self._tensor

    def label_index(self):
        """Map class label -> class id (labels must be present and hashable)."""
        if self.class_labels is None:
            raise ValueError("configuration has no class labels")
        return {lab: i for i, lab in enumerate(self.class_labels)}

    def __repr__(self):
        return "<configuration points=%d rank=%d %s>" % (
            self.n_points,
            self.rank,
            self.verification,
        )


@dataclass
class FiberSet:
    """Diagonal classes and the point partition they induce."""

    fiber_classes: list
    point_fiber: np.ndarray
    parts: list

    def __len__(self):
        return len(self.fiber_classes)


class IntersectionTensor:
    """Sparse intersection numbers: slice (i,j) maps k -> p^k_{i,j} for the
    nonzero entries. A dense r x r x r array is available below
    DENSE_TENSOR_CAP for cross-checks."""

    def __init__(self, rank, star, sizes, slices, n_points):
        self.rank = rank
        self.star_vector = star
        self.sizes = sizes
        self._slices = slices
        self.n_points = n_points

    def p(self, i, j, k):
        return self._slices.get((i, j), {}).get(k, 0)

    def slice(self, i, j):
        return self._slices.get((i, j), {})

    def star(self, i):
        return int(self.star_vector[i])

    def iter_nonzero(self):
        for (i, j), ks in self._slices.items():
            for k, p in ks.items():
                yield i, j, k, p

    def dense(self):
        if self.rank > DENSE_TENSOR_CAP:
            raise ValueError(
                "rank %d exceeds dense cap %d" % (self.rank, DENSE_TENSOR_CAP)
            )
        out = np.zeros((self.rank, self.rank, self.rank), dtype=np.int64)
        for i, j, k, p in self.iter_nonzero():
            out[i, j, k] = p
        return out


def _column_profile(m64, r, x, y):
    """(i,j) composition counts of the pair (x,y), as {key i*r+j: count}."""
    keys = m64[x] * r + m64[:, y]
    uk, ck = np.unique(keys, return_counts=True)
    return uk, ck


def _build_tensor(config):
    """Intersection numbers from one representative pair per class, then a
    cross-check against a second representative where the class has one."""
    M = config.matrix
    n = config.n_points
    r = config.rank
    m64 = M.astype(np.int64)
    x0, y0 = config._x0, config._y0
    flat = m64.ravel()
    order = np.argsort(flat, kind="stable")
    starts = np.zeros(r + 1, dtype=np.int64)
    np.cumsum(np.bincount(flat, minlength=r), out=starts[1:])
    slices = {}
    for k in range(r):
        uk, ck = _column_profile(m64, r, int(x0[k]), int(y0[k]))
        for key, cnt in zip(uk.tolist(), ck.tolist()):
            i, j = divmod(key, r)
            slices.setdefault((i, j), {})[k] = cnt
        if starts[k + 1] - starts[k] >= 2:
            second = int(order[starts[k] + 1])
            x1, y1 = divmod(second, n)
            uk2, ck2 = _column_profile(m64, r, x1, y1)
            if not (np.array_equal(uk, uk2) and np.array_equal(ck, ck2)):
                raise AxiomViolation(
                    3,
                    (int(x0[k]), int(y0[k]), x1, y1, k),
                    "intersection numbers differ between representatives of "
                    "class %d" % k,
                )
    return IntersectionTensor(
        r, config.star_vector(), config.class_sizes(), slices, n
    )


# ---------------------------------------------------------------------------
# ccfg text format


def write_ccfg(config, path):
    """Write "ccfg 1" text: header, points/classes line, then the normalized
    class matrix one row per line. path may be a filename or a text handle."""

    def emit(fh):
        fh.write("ccfg 1\n")
        fh.write("points %d classes %d\n" % (config.n_points, config.rank))
        for row in config.matrix:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")

    if hasattr(path, "write"):
        emit(path)
    else:
        with open(path, "w") as fh:
            emit(fh)


def read_ccfg(path, check="full"):
    """Parse and re-verify a ccfg file (filename or text handle).
    check="trusted" skips the axiom 3 sweep for known-good files; the result
    then reports itself unchecked."""

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
    if not lines or lines[0].split() != ["ccfg", "1"]:
        raise ValueError("not a ccfg 1 file")
    head = lines[1].split()
    if len(head) != 4 or head[0] != "points" or head[2] != "classes":
        raise ValueError("bad header line %r" % lines[1])
    n, r = int(head[1]), int(head[3])
    if len(lines) != 2 + n:
        raise ValueError("expected %d matrix rows, found %d" % (n, len(lines) - 2))
    matrix = np.array(
        [[int(v) for v in line.split()] for line in lines[2:]], dtype=np.int64
    )
    if matrix.shape != (n, n):
        raise ValueError("matrix shape %s does not match header" % (matrix.shape,))
    return CoherentConfiguration.from_class_matrix(matrix, rank=r, check=check)
