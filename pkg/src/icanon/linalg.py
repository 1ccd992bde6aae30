"""
Linear systems with Laurent polynomial coefficients, solved by evaluation.

A system ``sum_j a_{rj}(q) x_j = b_r(q)`` is evaluated at many integers modulo
a prime, solved there by Gaussian elimination, and each unknown is rebuilt by
interpolating ``q^N x_j(q)``. Every rebuilt solution is then checked exactly in
Laurent arithmetic, so a wrong reconstruction cannot pass silently.

Full column rank at one evaluation point proves the generic rank is full, so
uniqueness claims are certified. Rank deficiency at several points is
reported as non-uniqueness.

>>> from icanon.ring import Q, ONE
>>> sol = solve_laurent([{0: ONE, 1: ONE}, {0: ONE, 1: -ONE}], [Q + Q**-1, Q - Q**-1])
>>> str(sol[0]), str(sol[1])
('q', 'q^-1')
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .errors import NoSolution, NonLaurentCoefficient, NonUniqueSolution
from .ring import ZERO, LaurentPoly

PRIME = 2_147_483_629  # largest prime below 2^31; products of residues fit in int64
FIRST_POINT = 7919
POINT_STEP = 104_729

__all__ = [
    "PRIME", "evaluation_points", "eval_matrix", "rank_mod", "solve_mod",
    "solve_laurent", "solve_laurent_blocks",
]


def evaluation_points(count: int, start: int = 0) -> list[int]:
    """A fixed, deterministic sequence of distinct nonzero residues."""
    return [(FIRST_POINT + POINT_STEP * k) % PRIME for k in range(start, start + count)]


def _powers(points: Sequence[int], lo: int, hi: int) -> dict[int, np.ndarray]:
    """q^e mod p for every point and every e in [lo, hi]."""
    pts = np.array(points, dtype=np.int64)
    inv = np.array([pow(int(x), PRIME - 2, PRIME) for x in points], dtype=np.int64)
    out = {0: np.ones(len(points), dtype=np.int64)}
    cur = out[0]
    for e in range(1, max(hi, 0) + 1):
        cur = cur * pts % PRIME
        out[e] = cur
    cur = out[0]
    for e in range(-1, min(lo, 0) - 1, -1):
        cur = cur * inv % PRIME
        out[e] = cur
    return out


def _eval_polys(polys: Sequence[LaurentPoly], points: Sequence[int]) -> np.ndarray:
    """Array of shape (len(points), len(polys)) with the residues of each polynomial."""
    lo = min((p.min_exp for p in polys if p), default=0)
    hi = max((p.max_exp for p in polys if p), default=0)
    pw = _powers(points, lo, hi)
    out = np.zeros((len(points), len(polys)), dtype=np.int64)
    for k, p in enumerate(polys):
        acc = np.zeros(len(points), dtype=np.int64)
        for e, c in p.terms():
            acc = (acc + (c % PRIME) * pw[e]) % PRIME
        out[:, k] = acc
    return out


def eval_matrix(rows: Sequence[Mapping[int, LaurentPoly]], ncols: int, points: Sequence[int]) -> np.ndarray:
    """Dense residues, shape (len(points), len(rows), ncols)."""
    entries = [(r, c, v) for r, row in enumerate(rows) for c, v in row.items()]
    vals = _eval_polys([v for _, _, v in entries], points)
    A = np.zeros((len(points), len(rows), ncols), dtype=np.int64)
    if entries:
        ri = np.array([r for r, _, _ in entries])
        ci = np.array([c for _, c, _ in entries])
        for k in range(len(points)):
            A[k, ri, ci] = vals[k]
    return A


def _eliminate(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """
    Row echelon form mod PRIME with unit pivots; returns (matrix, pivot columns).
    Row updates touch only the nonzero columns of the pivot row, which keeps sparse
    systems cheap.
    """
    A = A.copy() % PRIME
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), PRIME - 2, PRIME)
        A[r] = A[r] * inv % PRIME
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            cols = np.nonzero(A[r])[0]
            f = A[below, c][:, None]
            A[np.ix_(below, cols)] = (A[np.ix_(below, cols)] - f * A[r, cols][None, :]) % PRIME
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod(A: np.ndarray) -> int:
    return len(_eliminate(A)[1])


def solve_mod(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray | None, int]:
    """
    Solve A x = b mod PRIME. Returns (x, rank of A); x is None when the system
    is inconsistent or A lacks full column rank.
    """
    nrows, ncols = A.shape
    aug = np.concatenate([A % PRIME, (b % PRIME).reshape(-1, 1)], axis=1)
    R, pivots = _eliminate(aug)
    if pivots and pivots[-1] == ncols:
        return None, len(pivots) - 1
    if len(pivots) < ncols:
        return None, len(pivots)
    # unit upper triangular in the first ncols rows: back substitution
    x = np.zeros(ncols, dtype=np.int64)
    for k in range(ncols - 1, -1, -1):
        row = R[k, k + 1:ncols]
        nzc = np.nonzero(row)[0]
        s = int(R[k, ncols])
        if nzc.size:
            s = (s - int(np.sum(row[nzc] * x[k + 1 + nzc] % PRIME))) % PRIME
        x[k] = s
    return x, ncols


def _interpolate(points: Sequence[int], values: np.ndarray) -> np.ndarray:
    """
    Coefficients (low to high) of the polynomials of degree < len(points) through
    the given values; ``values`` has shape (len(points), k). Newton form, then expanded.
    """
    K = len(points)
    xs = [int(x) for x in points]
    dd = values.copy() % PRIME
    for j in range(1, K):
        for i in range(K - 1, j - 1, -1):
            inv = pow((xs[i] - xs[i - j]) % PRIME, PRIME - 2, PRIME)
            dd[i] = (dd[i] - dd[i - 1]) % PRIME * inv % PRIME
    coeffs = np.zeros_like(dd)
    coeffs[0] = dd[K - 1]
    # Horner on the Newton form: p = dd[K-1]; p = p*(x - x_i) + dd[i]
    for i in range(K - 2, -1, -1):
        shifted = np.zeros_like(coeffs)
        shifted[1:] = coeffs[:-1]
        coeffs = (shifted - (xs[i] % PRIME) * coeffs) % PRIME
        coeffs[0] = (coeffs[0] + dd[i]) % PRIME
    return coeffs


def _lift(c: int) -> int:
    c = int(c) % PRIME
    return c - PRIME if c > PRIME // 2 else c


def _check_exact(rows, rhs, sol: Mapping[int, LaurentPoly]) -> bool:
    for row, b in zip(rows, rhs):
        acc = ZERO
        for j, a in row.items():
            x = sol.get(j)
            if x:
                acc = acc + a * x
        if acc != b:
            return False
    return True


def solve_laurent(
    rows: Sequence[Mapping[int, LaurentPoly]],
    rhs: Sequence[LaurentPoly],
    ncols: int | None = None,
    max_half_degree: int = 512,
) -> dict[int, LaurentPoly]:
    """
    The unique solution of the system, all of whose entries must be Laurent polynomials.

    Raises NonUniqueSolution when the generic column rank is deficient, NoSolution when
    the system is inconsistent, NonLaurentCoefficient when no Laurent solution of
    half-degree up to ``max_half_degree`` exists.
    """
    if ncols is None:
        ncols = 1 + max((j for row in rows for j in row), default=-1)
    if ncols == 0:
        if any(rhs):
            raise NoSolution("inconsistent system without unknowns")
        return {}

    # certify rank at a probe point; retry a couple of points before giving up
    probes = evaluation_points(3, start=10_000)
    A = eval_matrix(rows, ncols, probes)
    bvals = _eval_polys(list(rhs), probes)
    verdicts = []
    for k in range(len(probes)):
        x, rank = solve_mod(A[k], bvals[k])
        verdicts.append((x is not None, rank))
        if x is not None:
            break
    else:
        if all(rank < ncols for _, rank in verdicts):
            raise NonUniqueSolution(f"column rank {max(r for _, r in verdicts)} < {ncols} unknowns")
        raise NoSolution("system is inconsistent at every probe point")

    N = 4
    used = 0
    while N <= max_half_degree:
        K = 2 * N + 1
        points = evaluation_points(K + 2, start=used)
        used += K + 2
        A = eval_matrix(rows, ncols, points)
        bvals = _eval_polys(list(rhs), points)
        sols = []
        good_points = []
        for k in range(len(points)):
            x, _ = solve_mod(A[k], bvals[k])
            if x is not None:
                sols.append(x)
                good_points.append(points[k])
        if len(good_points) < K + 1:
            N *= 2
            continue
        fit_pts, check_pts = good_points[:K], good_points[K:]
        vals = np.stack(sols[:K])
        # x(q) = q^-N P(q): interpolate P(q) = q^N x(q)
        pw = np.array([pow(int(x), N, PRIME) for x in fit_pts], dtype=np.int64)
        coeffs = _interpolate(fit_pts, vals * pw[:, None] % PRIME)
        sol = {}
        for j in range(ncols):
            terms = {e - N: _lift(coeffs[e, j]) for e in range(K) if _lift(coeffs[e, j])}
            if terms:
                sol[j] = LaurentPoly(terms)
        # cheap validation at unused points before the exact check
        polys = [sol.get(j, ZERO) for j in range(ncols)]
        ev = _eval_polys(polys, check_pts)
        if all(np.array_equal(ev[k], sols[K + k]) for k in range(len(check_pts))):
            if _check_exact(rows, rhs, sol):
                return sol
        N *= 2
    raise NonLaurentCoefficient(f"no Laurent solution with exponents within ±{max_half_degree}")


def solve_laurent_blocks(
    rows: Sequence[Mapping[int, LaurentPoly]],
    rhs: Sequence[LaurentPoly],
    ncols: int,
) -> dict[int, LaurentPoly]:
    """
    :func:`solve_laurent` applied separately to each connected block of the
    row/unknown incidence graph. Unknowns touched by no row make the solution non-unique.
    """
    parent = list(range(ncols))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in rows:
        cols = list(row)
        for c in cols[1:]:
            ra, rb = find(cols[0]), find(c)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    touched = {c for row in rows for c in row}
    if len(touched) < ncols:
        raise NonUniqueSolution(f"{ncols - len(touched)} unknowns appear in no equation")
    groups: dict[int, list[int]] = {}
    for c in range(ncols):
        groups.setdefault(find(c), []).append(c)
    row_groups: dict[int, list[int]] = {}
    for r, row in enumerate(rows):
        if not row:
            if rhs[r]:
                raise NoSolution(f"equation {r} has no unknowns but a nonzero right side")
            continue
        row_groups.setdefault(find(next(iter(row))), []).append(r)
    out: dict[int, LaurentPoly] = {}
    for root, cols in sorted(groups.items()):
        local = {c: k for k, c in enumerate(cols)}
        rs = row_groups.get(root, [])
        sub_rows = [{local[c]: v for c, v in rows[r].items()} for r in rs]
        sub = solve_laurent(sub_rows, [rhs[r] for r in rs], len(cols))
        for k, v in sub.items():
            out[cols[k]] = v
    return out
