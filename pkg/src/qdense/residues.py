"""nth-power residues at prime-power moduli and the "nth power in Z_p" test.

The central quantity is the modulus exponent

    M(n, p) = v_p(n) + v_p(2^[2|n]) + 1,

i.e. M = v_p(n) + 2 when p = 2 and n is even, and M = v_p(n) + 1
otherwise.  A p-adic unit is an nth power in Z_p exactly when it is an
nth-power residue modulo p^M: residue status stabilizes from exponent M
onward (power-residue ladder climbing plus Newton lifting), so one finite
congruence decides the infinite-precision question.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import BudgetExceeded, NegativeValuation, NoRoot, NotAUnit
from .padic import (
    as_prime,
    hensel_lift_root,
    inverse_mod,
    unit_residue,
    valuation,
)

__all__ = [
    "StabilizationExponent",
    "ResidueSet",
    "stabilization_exponent",
    "nth_power_residues",
    "is_nth_power_residue",
    "is_nth_power_in_Zp",
    "stabilization_check",
    "nth_root_in_Zp",
]

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class StabilizationExponent:
    """The stabilization exponent data for degree n at prime p."""

    p: int
    n: int
    k: int  # v_p(n)
    M: int  # k + v_p(2^[2|n]) + 1

    @property
    def modulus(self) -> int:
        return self.p**self.M


def stabilization_exponent(n: int, p) -> StabilizationExponent:
    """Compute k = v_p(n) and M = k + v_p(2^[2|n]) + 1.

    The bracket [2|n] is 1 iff n is even, so the middle term is 1 exactly
    when p = 2 and n is even.
    """
    p = as_prime(p).p
    k = 0
    m = n
    while m % p == 0:
        m //= p
        k += 1
    M = k + (1 if (p == 2 and n % 2 == 0) else 0) + 1
    return StabilizationExponent(p=p, n=n, k=k, M=M)


@dataclass(frozen=True)
class ResidueSet:
    """The exact set of nth-power residues among units mod p^M."""

    p: int
    exponent: int  # n
    M: int
    members: frozenset

    @property
    def modulus(self) -> int:
        return self.p**self.M

    def sorted_members(self) -> list:
        return sorted(self.members)

    def __contains__(self, u: int) -> bool:
        return u % self.modulus in self.members


@lru_cache(maxsize=4096)
def _residue_members(n: int, p: int, M: int, budget: int) -> frozenset:
    pM = p**M
    if pM > budget:
        raise BudgetExceeded(f"enumerating units mod {p}^{M} exceeds budget {budget}")
    return frozenset(pow(a, n, pM) for a in range(1, pM) if a % p)


def nth_power_residues(n: int, p, M: int, budget: int = DEFAULT_BUDGET) -> ResidueSet:
    """Exact residue set {a^n mod p^M : p does not divide a}, by enumeration."""
    p = as_prime(p).p
    if M < 1:
        raise ValueError("modulus exponent M must be >= 1")
    return ResidueSet(p=p, exponent=n, M=M, members=_residue_members(n, p, M, budget))


def _dlog3_mod_2M(x: int, M: int):
    """Discrete log of x base 3 in the cyclic 2-group <3> mod 2^M (M >= 3).

    Returns t with 3^t == x (mod 2^M), or None if x lies outside <3>.
    Bit peeling: the group has order 2^(M-2), so at step i the partial
    quotient raised to 2^(M-3-i) is either 1 (bit 0) or the order-2
    element (bit 1).
    """
    mod = 1 << M
    e = M - 2
    t = 0
    for i in range(e):
        z = pow(x * pow(inverse_mod(3, mod), t, mod) % mod, 1 << (e - 1 - i), mod)
        if z != 1:
            t += 1 << i
    return t if pow(3, t, mod) == x % mod else None


@lru_cache(maxsize=1 << 18)
def _two_adic_decomposition(u: int, M: int):
    """Write the odd u as (-1)^s * 3^t mod 2^M, M >= 3."""
    mod = 1 << M
    t = _dlog3_mod_2M(u % mod, M)
    if t is not None:
        return 0, t
    t = _dlog3_mod_2M(-u % mod, M)
    if t is None:
        raise AssertionError(f"{u} mod 2^{M} escaped the <-1> x <3> decomposition")
    return 1, t


def is_nth_power_residue(u: int, n: int, p, M: int) -> bool:
    """Is u an nth power of some unit, modulo p^M?

    Uses group structure rather than enumeration: the units mod p^M form a
    cyclic group for odd p (order phi = p^(M-1)(p-1), so the answer is
    u^(phi/g) == 1 with g = gcd(n, phi)); for p = 2 and M >= 3 the group
    splits as <-1> x <3> and the test runs componentwise.
    """
    p = as_prime(p).p
    if M < 1:
        raise ValueError("modulus exponent M must be >= 1")
    if n < 1:
        raise ValueError("exponent n must be >= 1")
    if u % p == 0:
        raise NotAUnit(f"{u} is divisible by {p}")
    pM = p**M
    u %= pM
    if p != 2:
        phi = p ** (M - 1) * (p - 1)
        g = gcd(n, phi)
        return pow(u, phi // g, pM) == 1
    if M <= 2:
        return any(pow(a, n, pM) == u for a in range(1, pM, 2))
    s, t = _two_adic_decomposition(u, M)
    if n % 2 == 1:
        return True
    return s == 0 and t % gcd(n, 1 << (M - 2)) == 0


def is_nth_power_in_Zp(c, n: int, p) -> bool:
    """Is the rational c an nth power of a p-adic integer?

    Requires c != 0 with valuation(c, p) >= 0.  True iff n divides
    valuation(c, p) and the unit part of c is an nth-power residue
    modulo p^M with M = stabilization_exponent(n, p).M.
    """
    p = as_prime(p)
    c = Fraction(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    v = valuation(c, p)
    if v < 0:
        raise NegativeValuation(f"valuation {v} < 0: not a p-adic integer")
    if v % n != 0:
        return False
    exp = stabilization_exponent(n, p)
    return is_nth_power_residue(unit_residue(c, p, exp.M), n, p, exp.M)


def stabilization_check(
    u: int, pk: int, p, depth: int, budget: int = DEFAULT_BUDGET
) -> bool:
    """Test harness for the residue-status ladder of p^k-th powers.

    Checks, by independent brute-force enumeration, that u's status as a
    p^k-th power residue is the same at modulus exponent k + v_p(2) + 1 and
    at exponent k + v_p(2) + 1 + depth.  Expected to return True always.
    """
    p = as_prime(p).p
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if u % p == 0:
        raise NotAUnit(f"{u} is divisible by {p}")
    k = 0
    m = pk
    while m % p == 0:
        m //= p
        k += 1
    if m != 1 or k < 1:
        raise ValueError(f"{pk} is not a positive power of {p}")
    e0 = k + (1 if p == 2 else 0) + 1
    e1 = e0 + depth
    low = nth_power_residues(pk, p, e0, budget)
    high = nth_power_residues(pk, p, e1, budget)
    return (u % p**e0 in low.members) == (u % p**e1 in high.members)


def nth_root_in_Zp(c, n: int, p, K: int, budget: int = DEFAULT_BUDGET) -> int:
    """A residue x mod p^K with x^n == c (mod p^K), for c an nth power in Z_p.

    Locates a starting root of y^n = unit(c) by enumeration at a depth
    deep enough for the Newton inequality (max of M + 1 and 2*v_p(n) + 1),
    then lifts.  Raises NoRoot when c is not an nth power in Z_p.
    """
    p = as_prime(p)
    if not is_nth_power_in_Zp(c, n, p):
        raise NoRoot(f"x^{n} = {c} has no solution in Z_{p.p}")
    c = Fraction(c)
    v = valuation(c, p)
    if v >= K:
        # c == 0 mod p^K already; p^ceil(K/n) is the canonical root.
        return pow(p.p, (K + n - 1) // n, p.p**K)
    exp = stabilization_exponent(n, p)
    E = max(exp.M + 1, 2 * exp.k + 1)
    target = unit_residue(c, p, max(K - v, E))
    start_mod = p.p**E
    if start_mod > budget:
        raise BudgetExceeded(f"start enumeration mod {p.p}^{E} exceeds budget")
    start = next(
        (
            y
            for y in range(1, start_mod)
            if y % p.p and pow(y, n, start_mod) == target % start_mod
        ),
        None,
    )
    if start is None:
        raise AssertionError("stabilized residue test promised a starting root")
    root = hensel_lift_root([-target] + [0] * (n - 1) + [1], p, start, K - v)
    return root * p.p ** (v // n) % p.p**K
