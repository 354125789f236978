"""Empirical discovery of annihilating operators from sequence data.

Candidate shapes (order, deg_n, deg_a) are searched smallest first.  For
each candidate the unknowns are the monomial coefficients of the c_j; every
window position n contributes one homogeneous equation per power of a in
the residual c_0(n,a) F(n) + ... + c_r(n,a) F(n+r).  A nonzero kernel
vector of that system, normalized, is accepted only if the resulting
operator annihilates the entire input sequence, including a trailing
holdout that never enters the linear system.  Overdetermination plus the
holdout is the defense against fitting coincidences.

The linear algebra is exact and fraction-free: integer rows, pivoting by
smallest nonzero entry (bit length), cross-multiplication updates with the
integer content divided out of every updated row.  Row scaling cannot
change the kernel, so this is both exact and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .polys import BivarPoly
from .recurrence import PolySequence, RecurrenceOperator, verify_operator


class NotFound(Exception):
    """No candidate within the spec bounds verified on the full sequence."""


class InsufficientTerms(Exception):
    """Too few terms for any candidate within the spec bounds."""


@dataclass(frozen=True)
class GuessSpec:
    """Search bounds; holdout is the number of trailing terms kept out of
    the linear system and used only for verification."""

    max_order: int
    max_deg_n: int
    max_deg_a: int
    holdout: int = 5

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError("max_order must be positive")
        if self.max_deg_n < 0 or self.max_deg_a < 0:
            raise ValueError("degree bounds must be nonnegative")
        if self.holdout < 1:
            raise ValueError("holdout must be at least 1")


@dataclass(frozen=True)
class GuessResult:
    """A verified operator plus diagnostics about how it was pinned down.

    kernel_dim > 1 means the data admitted several candidate operators at
    this shape; the canonical one (most trailing zero unknowns) was chosen.
    """

    operator: RecurrenceOperator
    candidate: tuple[int, int, int]
    kernel_dim: int
    equations: int
    unknowns: int


def nullspace_vector(rows: Sequence[Sequence]) -> list[Fraction] | None:
    """One nonzero kernel vector of a rational matrix, or None.

    Deterministic: fixed pivot rule, and the returned vector is the
    canonical kernel basis vector with the most trailing zero entries.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return None
    ncols = len(rows[0])
    int_rows = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        fr = [Fraction(x) for x in r]
        scale = lcm(*(f.denominator for f in fr)) if fr else 1
        int_rows.append([int(f * scale) for f in fr])
    echelon, pivots = _echelon(int_rows)
    return _kernel_vector(echelon, pivots, ncols)


def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Integer row echelon form (rows independently rescaled)."""
    work = [r for r in rows if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    echelon: list[list[int]] = []
    pivots: list[int] = []
    for col in range(ncols):
        best = -1
        best_bits = 0
        for idx, row in enumerate(work):
            e = row[col]
            if e:
                bits = abs(e).bit_length()
                if best < 0 or bits < best_bits:
                    best, best_bits = idx, bits
        if best < 0:
            continue
        piv_row = work.pop(best)
        piv = piv_row[col]
        reduced = []
        for row in work:
            e = row[col]
            if e:
                upd = [piv * rj - e * pj for rj, pj in zip(row, piv_row)]
                g = 0
                for v in upd:
                    g = gcd(g, v)
                if g > 1:
                    upd = [v // g for v in upd]
                if any(upd):
                    reduced.append(upd)
            else:
                reduced.append(row)
        work = reduced
        echelon.append(piv_row)
        pivots.append(col)
        if not work:
            break
    return echelon, pivots


def _kernel_vector(
    echelon: list[list[int]], pivots: list[int], ncols: int
) -> list[Fraction] | None:
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    if not free:
        return None
    v = [Fraction(0)] * ncols
    v[free[0]] = Fraction(1)
    for row, p in zip(reversed(echelon), reversed(pivots)):
        s = Fraction(0)
        for c in range(p + 1, ncols):
            if row[c] and v[c]:
                s += Fraction(row[c]) * v[c]
        v[p] = -s / row[p]
    return v


def _fit_rows(
    seq: PolySequence, r: int, dn: int, da: int, holdout: int
) -> list[list[int]] | None:
    """Equation rows over the fitting segment (holdout excluded)."""
    fit = seq.values[: len(seq.values) - holdout]
    positions = len(fit) - r
    if positions < 1:
        return None
    unknowns = (r + 1) * (dn + 1) * (da + 1)
    rows: list[list[int]] = []
    for t in range(positions):
        n = seq.start + t
        window = fit[t : t + r + 1]
        max_deg = max(v.degree for v in window)
        if max_deg < 0:
            continue  # all-zero window constrains nothing
        npows = [n**p for p in range(dn + 1)]
        for s in range(max_deg + da + 1):
            row = [0] * unknowns
            nonzero = False
            u = 0
            for j in range(r + 1):
                vj = window[j]
                for p in range(dn + 1):
                    npow = npows[p]
                    for q in range(da + 1):
                        c = vj.coeff(s - q) if 0 <= s - q else 0
                        if c:
                            row[u] = npow * c
                            nonzero = True
                        u += 1
            if nonzero:
                rows.append(row)
    return rows


def _operator_from_vector(
    vec: list[Fraction], r: int, dn: int, da: int, start: int
) -> RecurrenceOperator | None:
    scale = lcm(*(f.denominator for f in vec))
    ints = [int(f * scale) for f in vec]
    coeffs = []
    u = 0
    for _ in range(r + 1):
        terms = {}
        for p in range(dn + 1):
            for q in range(da + 1):
                if ints[u]:
                    terms[(p, q)] = ints[u]
                u += 1
        coeffs.append(BivarPoly(terms))
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) < 2:
        return None
    return RecurrenceOperator(tuple(coeffs), valid_from=start)


def guess_operator(seq: PolySequence, spec: GuessSpec) -> GuessResult:
    """Smallest verified operator within the spec bounds.

    Candidates are tried by increasing order, then deg_n, then deg_a; the
    first operator that annihilates the whole sequence (holdout included)
    wins.  Raises NotFound when every admissible candidate fails, and
    InsufficientTerms when no candidate even has enough equations.
    """
    if len(seq.values) < 2 + spec.holdout:
        raise InsufficientTerms(
            f"{len(seq.values)} terms cannot support any search with "
            f"holdout {spec.holdout}"
        )
    any_admissible = False
    for r in range(1, spec.max_order + 1):
        for dn in range(spec.max_deg_n + 1):
            for da in range(spec.max_deg_a + 1):
                unknowns = (r + 1) * (dn + 1) * (da + 1)
                rows = _fit_rows(seq, r, dn, da, spec.holdout)
                if rows is None or len(rows) < unknowns:
                    continue
                any_admissible = True
                echelon, pivots = _echelon(rows)
                vec = _kernel_vector(echelon, pivots, unknowns)
                if vec is None:
                    continue
                op = _operator_from_vector(vec, r, dn, da, seq.start)
                if op is None:
                    continue
                if verify_operator(op, seq):
                    return GuessResult(
                        operator=op,
                        candidate=(r, dn, da),
                        kernel_dim=unknowns - len(pivots),
                        equations=len(rows),
                        unknowns=unknowns,
                    )
    if any_admissible:
        raise NotFound("no operator within the given bounds fits the data")
    raise InsufficientTerms("not enough terms for any candidate within the bounds")
