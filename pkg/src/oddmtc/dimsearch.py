"""
Recursive enumeration of candidate dimension arrays.

Two modes:

* basic: all non-invertible simple objects of a rank-n category with s
  invertible objects, so fpdim = s + 2*(d_1^2 + ... + d_k^2) with
  k = (n - s)/2 dual pairs.
* adjoint: non-invertible simples of the trivial grading component only,
  so fpdim = g * (s_ad + 2*sum d_i^2) where g is the global invertible
  count and (adjoint_rank, adjoint_invertibles) describe the component.

The recursion works on the quotients m_i = fpdim / d_i^2, which must be
odd positive integers with m_1 <= ... <= m_k.  Writing m_i = u_i^2 * w
(w squarefree, shared by all i), the state is the pair (u_i, c_i) where
c_i relates the remaining dimension budget to u_i^2; all bounds are
evaluated with exact rational arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from multiprocessing import Pool

from .exactmath import factorize, is_prime_power, isqrt_exact, squarefree_split


class Mode(enum.Enum):
    BASIC = "basic"
    ADJOINT = "adjoint"


@dataclass(frozen=True)
class SearchParams:
    rank: int
    invertibles: int
    mode: Mode = Mode.BASIC
    adjoint_rank: int | None = None
    adjoint_invertibles: int | None = None
    min_m1: int = 1
    m1_square: bool = False
    m1_exclude: frozenset[int] = field(default_factory=frozenset)
    mi_coprime: int | None = None
    min_run: int | None = None
    fpdim_bound: int | None = None

    def __post_init__(self):
        if self.rank < 1 or self.rank % 2 == 0:
            raise ValueError("rank must be odd and positive")
        if self.invertibles < 1 or self.invertibles % 2 == 0:
            raise ValueError("invertibles must be odd and positive")
        if self.mode is Mode.BASIC:
            if self.rank <= self.invertibles:
                raise ValueError("rank must exceed invertibles (k >= 1)")
        else:
            if self.adjoint_rank is None or self.adjoint_invertibles is None:
                raise ValueError("adjoint mode needs adjoint_rank and adjoint_invertibles")
            if self.adjoint_rank % 2 == 0 or self.adjoint_invertibles % 2 == 0:
                raise ValueError("adjoint parameters must be odd")
            if self.adjoint_rank <= self.adjoint_invertibles:
                raise ValueError("adjoint_rank must exceed adjoint_invertibles")
        if self.min_m1 < 1:
            raise ValueError("min_m1 must be positive")

    # --- derived quantities -------------------------------------------------

    @property
    def layer_invertibles(self) -> int:
        """Invertible count of the searched layer (the s in the equation)."""
        if self.mode is Mode.BASIC:
            return self.invertibles
        return self.adjoint_invertibles

    @property
    def group_order(self) -> int:
        """Multiplier between the layer equation and the global fpdim."""
        return 1 if self.mode is Mode.BASIC else self.invertibles

    @property
    def k(self) -> int:
        """Number of dual pairs searched."""
        if self.mode is Mode.BASIC:
            return (self.rank - self.invertibles) // 2
        return (self.adjoint_rank - self.adjoint_invertibles) // 2

    @property
    def perfect(self) -> bool:
        """Whether the searched layer has only the trivial invertible."""
        if self.mode is Mode.BASIC:
            return self.invertibles == 1
        return self.invertibles == 1  # |G(C)| = 1

    @property
    def t(self) -> int:
        return 225 if self.perfect else 9


@dataclass(frozen=True)
class DimSolution:
    fpdim: int
    invertibles: int
    dims: tuple[int, ...]
    quotients: tuple[int, ...]

    def sort_key(self):
        return (-self.fpdim, tuple(-d for d in self.dims))

    def full_multiset(self) -> list[int]:
        """All simple-object dims of the layer: invertibles plus both duals."""
        out = [1] * self.invertibles
        for d in self.dims:
            out.extend((d, d))
        return sorted(out, reverse=True)


def validate_solution(sol: DimSolution, params: SearchParams) -> None:
    """Independent re-check of every DimSolution invariant; raises on failure.

    Deliberately computed from the defining equations, sharing nothing with
    the recursion that produced the solution.
    """
    s = params.layer_invertibles
    g = params.group_order
    assert sol.invertibles == s
    assert len(sol.dims) == params.k
    assert sol.fpdim == g * (s + 2 * sum(d * d for d in sol.dims))
    assert sol.fpdim % 2 == 1
    assert sol.fpdim % 8 == params.rank % 8
    assert list(sol.dims) == sorted(sol.dims, reverse=True)
    prev = 0
    for d, m in zip(sol.dims, sol.quotients):
        assert d % 2 == 1 and d >= 3
        assert m * d * d == sol.fpdim
        assert m % 2 == 1
        assert m >= prev
        prev = m
        if params.perfect:
            assert d >= 15 and not is_prime_power(d)


def _m1_upper_bound_holds(m1: int, params: SearchParams) -> bool:
    # m1 <= g*(2k + s/t), compared exactly: m1*t <= g*(2k*t + s)
    g = params.group_order
    return m1 * params.t <= g * (2 * params.k * params.t + params.layer_invertibles)


def m1_candidates(params: SearchParams) -> list[int]:
    """All admissible first quotients m_1, ascending."""
    lo = max(params.invertibles, params.min_m1)
    first = lo + (-(lo - params.rank)) % 8
    out = []
    m1 = first
    while _m1_upper_bound_holds(m1, params):
        out.append(m1)
        m1 += 8
    if params.m1_square:
        out = [m for m in out if isqrt_exact(m)[1]]
    if params.m1_exclude:
        out = [m for m in out if m not in params.m1_exclude]
    if params.mi_coprime:
        out = [m for m in out if m % params.mi_coprime != 0]
    return out


def next_level(
    c_prev: Fraction, u_prev: int, remaining: int, params: SearchParams
) -> list[tuple[int, Fraction]]:
    """Admissible (u_next, c_next) continuations from state (c_prev, u_prev)."""
    s = params.layer_invertibles
    # u^2 <= s*u_prev^2/(t*c_prev) + 2*remaining*u_prev^2/c_prev
    upper = (Fraction(s, params.t) + 2 * remaining) * u_prev * u_prev / c_prev
    out = []
    u = u_prev
    while u * u <= upper:
        c_next = c_prev * u * u / (u_prev * u_prev) - 2
        if c_next > 0 and (not params.mi_coprime or u % params.mi_coprime != 0):
            out.append((u, c_next))
        u += 2
    return out


def _min_run_ok(dims: tuple[int, ...], length: int) -> bool:
    """Compatibility with an order-L symmetry that moves at least one object.

    Non-fixed dual pairs fall into groups of L equal dimensions, and fixed
    ones must have dimension divisible by L.  So the array qualifies iff
    some value occurs at least L times (the dims are sorted, so those are
    consecutive) and every value not divisible by L occurs a multiple of
    L times.
    """
    counts: dict[int, int] = {}
    for d in dims:
        counts[d] = counts.get(d, 0) + 1
    if all(c < length for c in counts.values()):
        return False
    return all(c % length == 0 for v, c in counts.items() if v % length)


def _finish(us, dk: int, w: int, params: SearchParams) -> DimSolution | None:
    """Dim reconstruction and predicate checks for a full u-chain ending in d_k."""
    if dk < 3 or dk % 2 == 0:
        return None
    uk = us[-1]
    dims = []
    for u in us:
        q, r = divmod(dk * uk, u)
        if r:
            return None
        dims.append(q)
    if params.perfect and any(d < 15 or is_prime_power(d) for d in dims):
        return None
    fpdim = w * uk * uk * dk * dk
    dims = tuple(dims)
    if params.fpdim_bound is not None and fpdim > params.fpdim_bound:
        return None
    if params.min_run is not None and not _min_run_ok(dims, params.min_run):
        return None
    quotients = tuple(w * u * u for u in us)
    return DimSolution(fpdim, params.layer_invertibles, dims, quotients)


def _dims_floor_sq(params: SearchParams) -> int:
    return 225 if params.perfect else 9


_PF_CACHE: dict[int, tuple[int, ...]] = {}


def _prime_factors(n: int) -> tuple[int, ...]:
    out = _PF_CACHE.get(n)
    if out is None:
        out = tuple(p for p, _ in factorize(n).factors)
        _PF_CACHE[n] = out
    return out


def _factor_with_hint(n: int, primes: tuple[int, ...]) -> list[tuple[int, int]]:
    """Factor n whose prime divisors are all contained in `primes`."""
    fac = []
    m = n
    for p in primes:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac.append((p, e))
    assert m == 1, "prime hint set incomplete"
    return fac


def _square_divisor_roots(fac: list[tuple[int, int]]) -> list[int]:
    """All d with d^2 dividing the factored number."""
    roots = [1]
    for p, e in fac:
        half = e // 2
        if half:
            powers = [p ** a for a in range(half + 1)]
            roots = [r * q for r in roots for q in powers]
    return roots


def _extend_hint(hint: tuple[int, ...], u: int) -> tuple[int, ...]:
    for p in _prime_factors(u):
        if p not in hint:
            hint = hint + (p,)
    return hint


class _Engine:
    """Shared branch-search machinery for one m1 value.

    The state of level i is the exact rational c_i held as a reduced
    integer pair (A, B) with c_i = A/B, together with the u-chain so far.
    The level-k test (d_k^2 = s/c_k a perfect square) is answered without
    scanning: every valid d_k satisfies d_k^2 | s*B*u^2, so candidates are
    read off the square divisors of that number, whose prime factors are
    known because B divides g times the product of the u_i^2.
    """

    def __init__(self, params: SearchParams, w: int):
        self.params = params
        self.w = w
        self.s = params.layer_invertibles
        self.t = params.t
        self.k = params.k
        self.cop = params.mi_coprime or 0
        self.bound = params.fpdim_bound
        self.floor_sq = _dims_floor_sq(params)
        self.dmin = 15 if params.perfect else 3
        self.out: list[DimSolution] = []

    def u_pruned(self, u: int) -> bool:
        if self.cop and u % self.cop == 0:
            return True
        return self.bound is not None and self.w * u * u * self.floor_sq > self.bound

    def over_bound(self, u: int) -> bool:
        # ascending scans can stop outright once the bound prunes
        return self.bound is not None and self.w * u * u * self.floor_sq > self.bound

    def final_node(self, A: int, B: int, u: int, path, hint) -> None:
        """rem = 1: emit every (u_k, d_k) completion of this state."""
        s = self.s
        u2 = u * u
        target = s * B * u2
        fac = _factor_with_hint(target, hint)
        for d in _square_divisor_roots(fac):
            if d < self.dmin:
                continue
            An = target // (d * d)
            q, r = divmod(An + 2 * B * u2, A)
            if r:
                continue
            up, square = isqrt_exact(q)
            if not square or up < u or up % 2 == 0 or self.u_pruned(up):
                continue
            sol = _finish(path + (up,), d, self.w, self.params)
            if sol is not None:
                self.out.append(sol)

    def final_chain(self, A: int, B: int, path) -> None:
        """Full-length chain: test d_k^2 = s*B/A directly."""
        num = self.s * B
        if num % A:
            return
        d, square = isqrt_exact(num // A)
        if square and d >= self.dmin:
            sol = _finish(path, d, self.w, self.params)
            if sol is not None:
                self.out.append(sol)

    def free_dfs(self, i: int, A: int, B: int, u: int, path, hint) -> None:
        """Unconstrained search from depth i down to k."""
        k = self.k
        s = self.s
        t = self.t
        stack = [(i, A, B, u, path, hint)]
        while stack:
            i, A, B, u, path, hint = stack.pop()
            rem = k - i
            if rem == 1:
                self.final_node(A, B, u, path, hint)
                continue
            u2 = u * u
            hi_num = (s + 2 * rem * t) * u2 * B
            hi_den = t * A
            up = max(u, math.isqrt(2 * B * u2 // A) - 2)
            if up % 2 == 0:
                up += 1
            while up * up * hi_den <= hi_num:
                if self.over_bound(up):
                    break
                if not self.cop or up % self.cop:
                    An = A * up * up - 2 * B * u2
                    if An > 0:
                        Bn = B * u2
                        g2 = gcd(An, Bn)
                        stack.append((i + 1, An // g2, Bn // g2, up,
                                      path + (up,), _extend_hint(hint, up)))
                up += 2


def _regular_branch(params: SearchParams, A0: int, B0: int, u1: int, w: int) -> list[DimSolution]:
    eng = _Engine(params, w)
    if eng.u_pruned(u1):
        return []
    hint = _extend_hint(_extend_hint(_extend_hint((), eng.s), params.group_order), u1)
    hint = _extend_hint(hint, w)
    if params.k == 1:
        eng.final_chain(A0, B0, (u1,))
    else:
        eng.free_dfs(1, A0, B0, u1, (u1,), hint)
    return eng.out


class _MinRunEngine(_Engine):
    """Search restricted to chains containing >= L consecutive equal u_i.

    Equal u-values give equal dims, so this realizes the "at least L equal
    consecutive dims" predicate structurally: enumerate the start j of the
    first length-L equal run (the prefix holds no such run and ends with a
    different value), force the L equal levels (each forced step is
    c -> c - 2), then search the suffix freely.  Each chain is produced
    exactly once, at its first run.
    """

    def __init__(self, params: SearchParams, w: int):
        super().__init__(params, w)
        self.L = params.min_run

    def start_run(self, i: int, A: int, B: int, u: int, path, hint, strict: bool) -> None:
        k = self.k
        s = self.s
        t = self.t
        L = self.L
        rem = k - i
        if rem < L:
            return
        u2 = u * u
        # forced steps need c' > 2*(L-1): A*v^2 > 2*L*B*u^2
        hi_num = (s + 2 * rem * t) * u2 * B
        hi_den = t * A
        up = max(u, math.isqrt(2 * L * B * u2 // A) - 2)
        if up % 2 == 0:
            up += 1
        while up * up * hi_den <= hi_num:
            if self.over_bound(up):
                break
            if ((up > u or not strict) and (not self.cop or up % self.cop)):
                An = A * up * up - 2 * B * u2
                if An > 0:
                    Bn = B * u2
                    g2 = gcd(An, Bn)
                    self.forced(i + 1, An // g2, Bn // g2, up,
                                path + (up,), _extend_hint(hint, up))
            up += 2

    def forced(self, j: int, A: int, B: int, v: int, path, hint) -> None:
        """Depth j holds the run value v; force L-1 further equal levels."""
        k = self.k
        for _ in range(self.L - 1):
            if len(path) == k:
                return  # run would overflow the chain
            An = A - 2 * B
            if An <= 0:
                return
            g2 = gcd(An, B)
            A, B = An // g2, B // g2
            path = path + (v,)
        depth = len(path)
        if depth == k:
            self.final_chain(A, B, path)
        elif depth == k - 1:
            self.final_node(A, B, v, path, hint)
        else:
            self.free_dfs(depth, A, B, v, path, hint)

    def search(self, A0: int, B0: int, u1: int) -> None:
        k = self.k
        s = self.s
        t = self.t
        L = self.L
        hint = _extend_hint(_extend_hint(_extend_hint((), s), self.params.group_order), u1)
        hint = _extend_hint(hint, self.w)
        if self.u_pruned(u1):
            return
        # run starting at depth 1 uses the fixed value u1
        self.forced(1, A0, B0, u1, (u1,), hint)
        # prefix states (depth, A, B, u, trailing run length < L)
        stack = [(1, A0, B0, u1, 1, (u1,), hint)]
        while stack:
            i, A, B, u, run, path, hint = stack.pop()
            self.start_run(i, A, B, u, path, hint, strict=True)
            if i + 1 > k - L:
                continue  # no room left for a later run
            rem = k - i
            u2 = u * u
            hi_num = (s + 2 * rem * t) * u2 * B
            hi_den = t * A
            up = max(u, math.isqrt(2 * B * u2 // A) - 2)
            if up % 2 == 0:
                up += 1
            while up * up * hi_den <= hi_num:
                if self.over_bound(up):
                    break
                nrun = run + 1 if up == u else 1
                if nrun < L and (not self.cop or up % self.cop):
                    An = A * up * up - 2 * B * u2
                    if An > 0:
                        Bn = B * u2
                        g2 = gcd(An, Bn)
                        stack.append((i + 1, An // g2, Bn // g2, up, nrun,
                                      path + (up,), _extend_hint(hint, up)))
                up += 2


def _divisors_between(n: int, lo: int, hi: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            for x in (d, n // d):
                if lo <= x <= hi:
                    out.append(x)
    return sorted(set(out), reverse=True)


def _bounded_branch(params: SearchParams, m1: int) -> list[DimSolution]:
    """All solutions of one m1 branch with fpdim <= params.fpdim_bound.

    With the bound B in force, fpdim = m1 * d1^2 <= B pins the largest dim
    to a short range, and every other dim must divide u1 * d1 (the square
    part root of fpdim, since w is squarefree).  So each (m1, d1) pair
    reduces to an exact subset-sum over those divisors; no recursion over
    u-chains is needed.
    """
    bound = params.fpdim_bound
    u1, w = squarefree_split(m1)
    g = params.group_order
    s = params.layer_invertibles
    k = params.k
    dmin = 15 if params.perfect else 3
    cop = params.mi_coprime or 0
    out: list[DimSolution] = []
    d1 = dmin
    while m1 * d1 * d1 <= bound:
        if params.perfect and is_prime_power(d1):
            d1 += 2
            continue
        fpdim = m1 * d1 * d1
        layer, r = divmod(fpdim, g)
        if r == 0:
            budget = (layer - s) // 2 - d1 * d1
            divisors = [
                d for d in _divisors_between(u1 * d1, dmin, d1)
                if not (params.perfect and is_prime_power(d))
                and not (cop and (w * (u1 * d1 // d) ** 2) % cop == 0)
            ]
            for rest in _fill_descending(divisors, 0, k - 1, budget):
                dims = (d1,) + rest
                if params.min_run is not None and not _min_run_ok(dims, params.min_run):
                    continue
                quotients = tuple(fpdim // (d * d) for d in dims)
                out.append(DimSolution(fpdim, s, dims, quotients))
        d1 += 2
    return out


def _fill_descending(divs, idx, need, budget):
    """Nonincreasing tuples of `need` entries from divs[idx:] whose squared
    sum is exactly `budget`."""
    if need == 0:
        if budget == 0:
            yield ()
        return
    if idx == len(divs):
        return
    lo = divs[-1]
    if budget < need * lo * lo:
        return
    d = divs[idx]
    d2 = d * d
    if budget > need * d2:
        return
    max_take = min(need, budget // d2)
    for take in range(max_take, -1, -1):
        for rest in _fill_descending(divs, idx + 1, need - take, budget - take * d2):
            yield (d,) * take + rest


def _search_branch(args) -> list[DimSolution]:
    """All solutions of one m1 branch."""
    params, m1 = args
    if params.fpdim_bound is not None:
        return _bounded_branch(params, m1)
    g = params.group_order
    A0, B0 = m1 - 2 * g, g
    if A0 <= 0:
        return []
    gg = gcd(A0, B0)
    A0 //= gg
    B0 //= gg
    u1, w = squarefree_split(m1)
    if params.min_run is not None and params.min_run > 1:
        eng = _MinRunEngine(params, w)
        eng.search(A0, B0, u1)
        return eng.out
    return _regular_branch(params, A0, B0, u1, w)


def enumerate_solutions(params: SearchParams, jobs: int = 1) -> list[DimSolution]:
    """Complete, duplicate-free, canonically ordered list of solutions."""
    m1s = m1_candidates(params)
    if jobs > 1 and len(m1s) > 1:
        with Pool(min(jobs, len(m1s))) as pool:
            chunks = pool.map(_search_branch, [(params, m1) for m1 in m1s])
    else:
        chunks = [_search_branch((params, m1)) for m1 in m1s]
    out = [sol for chunk in chunks for sol in chunk]
    assert len({(s.fpdim, s.dims) for s in out}) == len(out), "duplicate solutions"
    for sol in out:
        validate_solution(sol, params)
    return sorted(out, key=DimSolution.sort_key)
