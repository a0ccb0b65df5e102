"""Recurrence sequences of a black-box map and their local inversion.

The pipeline feeds outputs of a map F on GF(2)^n back into itself:
S = {y, F(y), F(F(y)), ...}.  When S satisfies a linear recurrence with
minimal polynomial m(X) = X^m + a_{m-1} X^{m-1} + ... + a_0 and a_0 = 1,
the element before y on the orbit is

    x = terms[m-1] + sum of terms[i-1] over i in 1..m-1 with a_i = 1

(sums are XOR), and F(x) == y whenever y lies on a purely periodic orbit
and the window was long enough.  A candidate is only ever reported after
that equation has been re-checked against a fresh evaluation of F.

For the linear algebra the whole window is packed into one int, n bits
per term, so the nk-bit column of the stacked Hankel system that starts
at term j is a single shift+mask.  One XOR basis over full-height
columns serves every candidate degree k at once: a pivot below row n*k
counts toward rank H(k), and reducing column k against pivots below n*k
solves H(k) a = h(k+1).
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass
from typing import Callable

from .gf2 import BitVec, Gf2Poly, ONE, lcm, order

UNIQUE = "unique"
SATURATED = "saturated"
RANK_DEFICIENT = "rank-deficient"

SOLUTION = "solution"
INSUFFICIENT_DATA = "insufficient-data"


class EvalBudgetExceeded(RuntimeError):
    pass


class BlackBoxMap:
    """A map GF(2)^in_width -> GF(2)^out_width, used only by calling it.

    `evals` counts every evaluation performed; reported counts elsewhere
    come straight from it.  Setting `max_evals` makes the next call past
    the budget raise EvalBudgetExceeded, which bounds runaway iteration.
    """

    def __init__(self, fn: Callable[[BitVec], BitVec], in_width: int,
                 out_width: int | None = None, label: str = ""):
        self.fn = fn
        self.in_width = in_width
        self.out_width = in_width if out_width is None else out_width
        self.label = label
        self.evals = 0
        self.max_evals: int | None = None

    def __call__(self, x: BitVec) -> BitVec:
        if x.width != self.in_width:
            raise ValueError(f"input width {x.width}, map expects {self.in_width}")
        if self.max_evals is not None and self.evals >= self.max_evals:
            raise EvalBudgetExceeded(f"evaluation budget {self.max_evals} exhausted")
        self.evals += 1
        y = self.fn(x)
        if y.width != self.out_width:
            raise ValueError(f"map produced width {y.width}, declared {self.out_width}")
        return y


@dataclass(frozen=True)
class RecurrenceSequence:
    """Window terms[t] = F^(t)(seed) of an iterated map, t = 0 .. M-1."""

    terms: tuple[BitVec, ...]
    seed: BitVec
    map_label: str = ""

    def __post_init__(self):
        if len(self.terms) < 1:
            raise ValueError("empty sequence")
        w = self.terms[0].width
        if any(t.width != w for t in self.terms):
            raise ValueError("mixed widths in sequence")
        if self.terms[0] != self.seed:
            raise ValueError("terms[0] must equal the seed")

    @property
    def width(self) -> int:
        return self.terms[0].width

    def packed(self) -> int:
        """All terms in one int, n bits per term, term 0 lowest."""
        n = self.width
        v = 0
        for t, term in enumerate(self.terms):
            v |= term.value << (t * n)
        return v

    def verify(self, F: BlackBoxMap) -> bool:
        """Re-check terms[t+1] == F(terms[t]) with fresh evaluations."""
        return all(F(self.terms[t]) == self.terms[t + 1]
                   for t in range(len(self.terms) - 1))


@dataclass(frozen=True)
class MinPolyResult:
    minpoly: Gf2Poly | None
    status: str
    rank_profile: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class InversionReport:
    outcome: str
    x: BitVec | None
    minpoly: Gf2Poly | None
    linear_complexity: int | None
    terms_consumed: int
    map_evals: int
    period_estimate: int | None

    @property
    def solved(self) -> bool:
        return self.outcome == SOLUTION


def generate(F: BlackBoxMap, y: BitVec, M: int) -> RecurrenceSequence:
    """First M terms of the feedback sequence: exactly M-1 evaluations."""
    if M < 2:
        raise ValueError("window length M must be >= 2")
    if F.in_width != F.out_width:
        raise ValueError("feedback iteration needs matching in/out widths")
    terms = [y]
    for _ in range(M - 1):
        terms.append(F(terms[-1]))
    return RecurrenceSequence(tuple(terms), y, F.label)


def minimal_polynomial(seq: RecurrenceSequence) -> MinPolyResult:
    """Least-degree monic annihilator of the window, with rank evidence.

    Scans k = 1 .. floor(M/2).  Degree k wins when the k stacked window
    columns are independent on their top n*k rows (rank H(k) = k), the
    system H(k) a = h(k+1) is consistent there, and the resulting
    polynomial X^k + sum a_i X^i annihilates every window of the data.
    Status is `unique` on a win, `saturated` when the rank is still full
    at k = floor(M/2) (the degree may exceed the data), `rank-deficient`
    otherwise.
    """
    M = len(seq.terms)
    if M < 2:
        raise ValueError("need at least 2 terms")
    n = seq.width
    packed = seq.packed()
    if packed == 0:
        # Constant-zero orbit: every polynomial annihilates, so the scan
        # below never sees a full-rank system.  X+1 is the least-degree
        # annihilator with an invertible constant term and inverts to
        # x = y = 0.
        return MinPolyResult(Gf2Poly(0b11), UNIQUE, ((1, 0),))

    m_max = M // 2
    height = n * m_max
    colmask = (1 << height) - 1
    basis: dict[int, tuple[int, int]] = {}  # pivot row -> (vector, column combo)
    pivots: list[int] = []
    profile: list[tuple[int, int]] = []

    def insert(vec: int, mask: int) -> None:
        while vec:
            p = (vec & -vec).bit_length() - 1
            hit = basis.get(p)
            if hit is None:
                basis[p] = (vec, mask)
                insort(pivots, p)
                return
            vec ^= hit[0]
            mask ^= hit[1]

    insert(packed & colmask, 1)

    for k in range(1, m_max + 1):
        cut = n * k
        rank_k = bisect_left(pivots, cut)
        profile.append((k, rank_k))

        vec = (packed >> (k * n)) & colmask
        mask = 1 << k
        consistent = True
        while vec:
            p = (vec & -vec).bit_length() - 1
            if p >= cut:
                break
            hit = basis.get(p)
            if hit is None:
                consistent = False
                break
            vec ^= hit[0]
            mask ^= hit[1]

        if consistent and rank_k == k:
            cand = mask
            acc = 0
            b = cand
            while b:
                i = (b & -b).bit_length() - 1
                acc ^= packed >> (i * n)
                b &= b - 1
            if (acc & ((1 << ((M - k) * n)) - 1)) == 0:
                return MinPolyResult(Gf2Poly(cand), UNIQUE, tuple(profile))

        if k < m_max:
            insert(vec, mask)

    status = SATURATED if len(pivots) == m_max else RANK_DEFICIENT
    return MinPolyResult(None, status, tuple(profile))


def invert_from_minpoly(seq: RecurrenceSequence, mp: Gf2Poly) -> BitVec:
    """Candidate preimage of the seed from an annihilator with mp(0) = 1."""
    m = mp.degree
    if m < 1:
        raise ValueError("annihilator must have degree >= 1")
    if mp.constant_term == 0:
        raise ValueError("constant term is zero: the window does not certify "
                         "a purely periodic orbit")
    if len(seq.terms) < m:
        raise ValueError("window shorter than the annihilator degree")
    v = seq.terms[m - 1].value
    for i in range(1, m):
        if mp.coeff(i):
            v ^= seq.terms[i - 1].value
    return BitVec(v, seq.width)


def local_inversion(F: BlackBoxMap, y: BitVec, M: int | None = None) -> InversionReport:
    """Window, minimal polynomial, inversion formula, verification.

    Uses M-1 evaluations for the window plus one fresh evaluation to
    check F(x) == y.  Never returns an unverified candidate: every
    failure mode (saturated or rank-deficient window, zero constant
    term, verification mismatch) comes back as insufficient data.
    """
    if M is None:
        M = 4 * F.in_width
    before = F.evals
    seq = generate(F, y, M)
    res = minimal_polynomial(seq)
    if res.status == UNIQUE and res.minpoly.constant_term == 1:
        x = invert_from_minpoly(seq, res.minpoly)
        if F(x) == y:
            deg = res.minpoly.degree
            period = order(res.minpoly, min(1 << 20, 1 << deg))
            return InversionReport(SOLUTION, x, res.minpoly, deg, M,
                                   F.evals - before, period)
    lc = res.minpoly.degree if res.minpoly is not None else None
    return InversionReport(INSUFFICIENT_DATA, None, res.minpoly, lc, M,
                           F.evals - before, None)


def _bm_scalar(bits: int, M: int) -> tuple[int, int]:
    """Berlekamp-Massey over GF(2) on bit t = s_t, t = 0 .. M-1.

    Returns (L, C): the linear complexity and the connection polynomial
    bits (bit i = c_i, c_0 = 1) with s_t = sum c_i s_{t-i} for t >= L.
    """
    rev = 0
    for t in range(M):
        if (bits >> t) & 1:
            rev |= 1 << (M - 1 - t)
    C, B = 1, 1
    L, gap = 0, 1
    for t in range(M):
        window = rev >> (M - 1 - t)  # bit i = s_{t-i}
        d = (C & window).bit_count() & 1
        if d == 0:
            gap += 1
        elif 2 * L <= t:
            C, B = C ^ (B << gap), C
            L = t + 1 - L
            gap = 1
        else:
            C ^= B << gap
            gap += 1
    return L, C


def bm_crosscheck(seq: RecurrenceSequence) -> Gf2Poly:
    """Minimal polynomial by an independent route: scalar Berlekamp-Massey
    per bit component, then the lcm of the component polynomials.

    Identically zero components contribute nothing.  The all-zero window
    gets X+1, the same convention as minimal_polynomial.
    """
    n = seq.width
    M = len(seq.terms)
    result = ONE
    for b in range(n):
        comp = 0
        for t, term in enumerate(seq.terms):
            comp |= ((term.value >> b) & 1) << t
        if comp == 0:
            continue
        L, C = _bm_scalar(comp, M)
        mb = 0
        for i in range(L + 1):
            if (C >> i) & 1:
                mb |= 1 << (L - i)
        result = lcm(result, Gf2Poly(mb))
    if result.degree < 1:
        return Gf2Poly(0b11)
    return result
