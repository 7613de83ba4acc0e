"""Adjacency-algebra decomposition: regular representation, exact rational
center, and character degrees d_1..d_t with sum of squares exactly r.

The center is found by exact rational linear algebra on the commutator
system. Only the eigen-decomposition of one generic central element is
floating point; eigenvalues are clustered at 1e-8 * norm and idempotent
residuals must stay below 1e-6. The generic element is Hermitian rather
than real symmetric: a real symmetric central element takes equal values
on complex-conjugate character pairs (already for the Z/5 scheme), so no
seed retry could ever separate them, while generic Hermitian elements do."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

SPECTRAL_CAP = 2000


class DegreeComputationError(Exception):
    """Decomposition failed validation; carries the residual diagnostics.
    The adjacency algebra is always semisimple, so reaching this is
    evidence of a bug, not of bad input."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


def regular_representation(config):
    """The r x r integer matrices (L_i)[k, j] = p^k_{i,j}; i -> L_i is an
    exact algebra homomorphism."""
    t = config.intersection()
    r = config.rank
    out = []
    for i in range(r):
        L = np.zeros((r, r), dtype=np.int64)
        for j in range(r):
            for k, p in t.slice(i, j).items():
                L[k, j] = p
        out.append(L)
    return out


def _commutator_rows(config, j):
    """Rows of the exact center system for generator j: entry [k, i] is
    p^k_{i,j} - p^k_{j,i}. Central vectors x satisfy D_j x = 0 for all j."""
    t = config.intersection()
    r = config.rank
    D = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        for k, p in t.slice(i, j).items():
            D[k, i] += p
        for k, p in t.slice(j, i).items():
            D[k, i] -= p
    return D


def _fraction_kernel(rows, width):
    """Kernel basis of an iterable of integer/Fraction rows, as a list of
    Fraction vectors of the given width. Gauss-Jordan (reduced echelon),
    exact; the kernel formula below needs pivot columns cleared everywhere."""
    echelon = []  # (pivot_col, row) with row[pivot_col] == 1
    for raw in rows:
        row = [Fraction(v) for v in raw]
        for pc, er in echelon:
            if row[pc]:
                f = row[pc]
                for c in range(width):
                    row[c] -= f * er[c]
        pivot = next((c for c in range(width) if row[c]), None)
        if pivot is None:
            continue
        inv = row[pivot]
        row = [v / inv for v in row]
        for pc, er in echelon:
            if er[pivot]:
                f = er[pivot]
                for c in range(width):
                    er[c] -= f * row[c]
        echelon.append((pivot, row))
    echelon.sort()
    pivots = [pc for pc, _ in echelon]
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * width
        vec[fc] = Fraction(1)
        for pc, er in echelon:
            vec[pc] = -er[fc]
        basis.append(vec)
    return basis


def _integerize(vec):
    """Scale a Fraction vector to coprime integers (exact)."""
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _exact_product(D, basis):
    """D @ basis^T with exact integer arithmetic. int64 when safely below
    overflow, Python ints otherwise."""
    B = np.array(basis, dtype=object)
    bound = D.shape[1] * int(np.abs(D).max(initial=0)) * max(
        (abs(v) for row in basis for v in row), default=0
    )
    if bound < 2**62:
        return (D @ np.array(basis, dtype=np.int64).T).tolist()
    return np.dot(D.astype(object), B.T).tolist()


def center_basis(config):
    """Exact basis of the center of the adjacency algebra, as integer
    coefficient vectors over the class basis. Constraints are added one
    generator at a time, shrinking the running kernel; the final basis is
    re-checked against every generator."""
    r = config.rank
    basis = [[1 if c == b else 0 for c in range(r)] for b in range(r)]
    for j in range(r):
        D = _commutator_rows(config, j)
        if not D.any():
            continue
        # restrict D to the current kernel: M[k, b] = (D @ basis_b)[k]
        M = _exact_product(D, basis)
        combos = _fraction_kernel(M, len(basis))
        basis = [
            _integerize(
                [
                    sum(combo[b] * basis[b][c] for b in range(len(basis)))
                    for c in range(r)
                ]
            )
            for combo in combos
        ]
        if not basis:
            raise DegreeComputationError("empty center", residual=None)
    # exact re-validation against all generators
    for j in range(r):
        D = _commutator_rows(config, j)
        for row in _exact_product(D, basis):
            if any(row):
                raise AssertionError("center candidate fails generator %d" % j)
    return basis


@dataclass
class DegreeProfile:
    degrees: tuple
    residual: float

    def __iter__(self):
        return iter(self.degrees)


def _cluster(vals, tol):
    groups = [[0]]
    for idx in range(1, len(vals)):
        if vals[idx] - vals[idx - 1] > tol:
            groups.append([idx])
        else:
            groups[-1].append(idx)
    return groups


def character_degrees(
    config,
    seed=0,
    cluster_tol=1e-8,
    idem_tol=1e-6,
    cap=SPECTRAL_CAP,
    max_retries=8,
):
    """Character degrees of the adjacency algebra: exact center, then one
    seeded generic Hermitian central element is diagonalized; eigenspace
    clusters give the central primitive idempotents e_s, and d_s is the
    square root of dim(e_s * algebra). Fails hard unless sum d_s^2 = r
    exactly and every numerical residual stays within tolerance."""
    r = config.rank
    if r > cap:
        raise ValueError("rank %d exceeds spectral cap %d" % (r, cap))
    if config.n_points > 2 * cap:
        raise ValueError(
            "point count %d too large for the dense spectral path"
            % config.n_points
        )
    basis = center_basis(config)
    t = len(basis)
    adj = [config.adjacency_matrix(i).astype(np.float64) for i in range(r)]
    n = config.n_points
    centers = []
    for vec in basis:
        Z = np.zeros((n, n))
        for i, coef in enumerate(vec):
            if coef:
                Z += float(coef) * adj[i]
        centers.append(Z)
    last_residual = None
    for attempt in range(max_retries):
        rnd = random.Random(seed + attempt)
        H = np.zeros((n, n), dtype=np.complex128)
        for Z in centers:
            c = Fraction(rnd.randint(1, 1 << 20), 1 << 10)
            d = Fraction(rnd.randint(1, 1 << 20), 1 << 10)
            H += float(c) * (Z + Z.T)
            H += 1j * float(d) * (Z - Z.T)
        scale = max(float(np.abs(H).max()), 1.0)
        vals, vecs = np.linalg.eigh(H)
        groups = _cluster(vals, cluster_tol * scale)
        if len(groups) != t:
            continue  # eigenvalue collision; retry with the next seed
        degrees = []
        residual = 0.0
        ok = True
        total = np.zeros((n, n), dtype=np.complex128)
        for grp in groups:
            V = vecs[:, grp]
            e = V @ V.conj().T
            total += e
            residual = max(
                residual, float(np.abs(e @ e - e).max())
            )
            stack = np.stack([(e @ A).reshape(-1) for A in adj])
            sv = np.linalg.svd(stack, compute_uv=False)
            dim = int((sv > cluster_tol * max(float(sv[0]), 1.0)).sum())
            d = round(dim**0.5)
            if d < 1 or d * d != dim:
                ok = False
                break
            degrees.append(d)
        residual = max(
            residual, float(np.abs(total - np.eye(n)).max())
        )
        last_residual = residual
        if not ok or residual > idem_tol:
            continue
        if sum(d * d for d in degrees) != r:
            raise DegreeComputationError(
                "sum of squared degrees %s misses rank %d"
                % (sorted(degrees), r),
                residual,
            )
        return DegreeProfile(tuple(sorted(degrees)), residual)
    raise DegreeComputationError(
        "no seed in %d attempts gave a clean decomposition" % max_retries,
        last_residual,
    )


def max_degree_lower_bound_check(config, profile=None):
    """Every configuration with f fibers has a character degree >= f."""
    if profile is None:
        profile = character_degrees(config)
    return max(profile.degrees) >= config.n_fibers
