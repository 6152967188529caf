"""Arithmetic constraints on twist orders from the classification of
endomorphism algebras of simple abelian varieties.

For a geometrically simple abelian variety of dimension g whose endomorphism
algebra contains the m-th roots of unity, phi(m) divides the degree of the
algebra over Q, which divides 2g.  That bounds the possible odd twist orders
m, and the integer d = 2g / [Z : Q] (Z the center) controls a coprimality
criterion: gcd(m, d) = 1 certifies the local-global principle.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class InconsistentProfile(ValueError):
    pass


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def admissible_m(g: int) -> list[int]:
    """All odd m >= 3 with phi(m) | 2g, in increasing order.

    The scan up to 2g^2 + 1 is complete: phi(m)^2 >= 2m for every odd
    m >= 5 (the ratio m / phi(m)^2 is multiplicative over prime powers and
    maximal at m = 3, where it is 3/4; for every other odd prime power it is
    at most 5/16), so phi(m) | 2g forces m <= 2g^2, and m = 3 is below the
    bound as well.
    """
    if g < 1:
        raise ValueError("dimension must be positive")
    bound = 2 * g * g + 1
    return [m for m in range(3, bound + 1, 2) if (2 * g) % totient(m) == 0]


def is_fermat_prime(p: int) -> bool:
    if p < 3 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        return False
    k = p - 1
    while k % 2 == 0:
        k //= 2
    return k == 1


def fermat_squarefree_check(m: int) -> bool:
    """True iff m is squarefree and every prime factor is a Fermat prime.

    For g a power of two this characterizes which odd twist orders can
    occur at all.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError("m must be odd and at least 3")
    factors = factorize(m)
    return all(e == 1 for e in factors.values()) and all(
        is_fermat_prime(p) for p in factors
    )


@dataclass(frozen=True)
class AlbertProfile:
    """What is known about the endomorphism algebra of one instance.

    g is the dimension, m the twist order; center_degree is [Z : Q] for the
    center Z, d = 2g / [Z : Q]; delta^2 is the dimension of the algebra over
    its center and e0 the degree of the maximal totally real subfield of Z.
    Optional data is validated but never inferred.
    """

    g: int
    m: int
    center_degree: int | None = None
    d: int | None = None
    delta: int | None = None
    e0: int | None = None

    def __post_init__(self):
        if self.g < 1:
            raise InconsistentProfile("dimension must be positive")
        if self.m < 1:
            raise InconsistentProfile("twist order must be positive")
        two_g = 2 * self.g
        if self.center_degree is not None:
            if self.center_degree < 1 or two_g % self.center_degree != 0:
                raise InconsistentProfile("[Z:Q] must divide 2g")
            if self.m >= 3 and self.center_degree < totient(self.m):
                raise InconsistentProfile(
                    "[Z:Q] is smaller than phi(m) although mu_m lies in the center"
                )
        if self.d is not None:
            if self.d < 1 or two_g % self.d != 0:
                raise InconsistentProfile("d must divide 2g")
            if self.center_degree is not None and self.d * self.center_degree != two_g:
                raise InconsistentProfile("d * [Z:Q] must equal 2g")
        if self.delta is not None and self.e0 is not None:
            if self.g % (self.e0 * self.delta**2) != 0:
                raise InconsistentProfile("e0 * delta^2 must divide g")


@dataclass(frozen=True)
class CoprimalityCertificate:
    rule: str
    d_or_bound: int
    detail: str

    def to_dict(self) -> dict:
        return {"rule": self.rule, "value": self.d_or_bound, "detail": self.detail}


def coprimality_certificate(profile: AlbertProfile) -> CoprimalityCertificate | None:
    """A proof that gcd(m, d) = 1 from the available data, or None.

    Rules, in priority order:
      (a) d is given and gcd(m, d) = 1;
      (b) [Z:Q] is given, so d = 2g/[Z:Q] is determined;
      (c) phi(m) | [Z:Q] | 2g forces d | 2g/phi(m), so it is enough that
          gcd(m, 2g/phi(m)) = 1.
    """
    m, g = profile.m, profile.g
    two_g = 2 * g
    if profile.d is not None:
        if gcd(m, profile.d) == 1:
            return CoprimalityCertificate(
                "given-d", profile.d, f"d = {profile.d} is given and gcd({m}, {profile.d}) = 1"
            )
        return None
    if profile.center_degree is not None:
        d = two_g // profile.center_degree
        if gcd(m, d) == 1:
            return CoprimalityCertificate(
                "center-degree",
                d,
                f"d = 2g/[Z:Q] = {d} and gcd({m}, {d}) = 1",
            )
        return None
    phi = totient(m)
    if two_g % phi != 0:
        raise InconsistentProfile(
            f"phi({m}) = {phi} does not divide 2g = {two_g}, "
            "impossible when mu_m lies in the endomorphism algebra"
        )
    bound = two_g // phi
    if gcd(m, bound) == 1:
        return CoprimalityCertificate(
            "divisor-bound",
            bound,
            f"d divides 2g/phi(m) = {bound} and gcd({m}, {bound}) = 1",
        )
    return None
