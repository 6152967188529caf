"""Exact cohomology of a finite group with finite abelian coefficients.

Inhomogeneous (bar) cochains in degrees 0..2, with the differentials

    (d0 m)(g)       = g.m - m
    (d1 f)(g, h)    = g.f(h) - f(gh) + f(g)
    (d2 f)(g, h, k) = g.f(h, k) - f(gh, k) + f(g, hk) - f(g, h)

A cochain of degree n is a vector over (tuple, coordinate) positions, tuples
of G^n in lexicographic order.  H^n is computed as a lattice quotient: the
lattice of integer cocycle lifts (a congruence kernel) modulo coboundaries
plus coefficient relations, all through Smith normal form.  The resulting
witness data turns every later map (restriction, inflation, conjugation,
locally-trivial kernels) into integer matrix algebra.

Generators are ordered by Smith pivot order, so identical inputs always
produce identical representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm, prod

import numpy as np

from .groups import FiniteGroup, GroupHom, Subgroup, quotient
from .gmodules import GModule, ModuleElement, restrict_module
from .linalg import (
    LatticeQuotient,
    NotInLattice,
    column_lattice_basis,
    congruence_kernel,
    int_matrix,
    lattice_quotient,
    zero_matrix,
)

DEFAULT_SIZE_BOUND = 20000


class TooLarge(ValueError):
    pass


class IncompatibleCoefficients(ValueError):
    pass


def group_tuples(order: int, degree: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(order), repeat=degree))


def tuple_index(order: int, gs: tuple[int, ...]) -> int:
    idx = 0
    for g in gs:
        idx = idx * order + g
    return idx


@dataclass(frozen=True)
class Cochain:
    """A total map from G^degree to the module, stored as a value per tuple
    (lexicographic tuple order).  Degree 3 occurs only as a coboundary of a
    degree-2 cochain, for cocycle testing."""

    module: GModule
    degree: int
    values: tuple[ModuleElement, ...]

    def __post_init__(self):
        if not 0 <= self.degree <= 3:
            raise ValueError("supported degrees are 0..3")
        expected = self.module.group.order ** self.degree
        if len(self.values) != expected:
            raise ValueError(f"need {expected} values, got {len(self.values)}")
        reduced = tuple(self.module.reduce(v) for v in self.values)
        object.__setattr__(self, "values", reduced)

    def __call__(self, *gs: int) -> ModuleElement:
        if len(gs) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        return self.values[tuple_index(self.module.group.order, gs)]

    @property
    def is_zero(self) -> bool:
        zero = self.module.zero()
        return all(v == zero for v in self.values)

    def add(self, other: "Cochain") -> "Cochain":
        if other.module != self.module or other.degree != self.degree:
            raise ValueError("cochains live in different spaces")
        return Cochain(
            self.module,
            self.degree,
            tuple(self.module.add(a, b) for a, b in zip(self.values, other.values)),
        )

    def scale(self, k: int) -> "Cochain":
        return Cochain(
            self.module, self.degree, tuple(self.module.scale(k, v) for v in self.values)
        )

    def to_vector(self) -> np.ndarray:
        flat = [int(c) for v in self.values for c in v]
        return np.array(flat, dtype=object)

    def to_report(self) -> dict:
        order = self.module.group.order
        return {
            ",".join(map(str, gs)): list(self.values[tuple_index(order, gs)])
            for gs in group_tuples(order, self.degree)
        }


def zero_cochain(module: GModule, degree: int) -> Cochain:
    count = module.group.order ** degree
    return Cochain(module, degree, tuple(module.zero() for _ in range(count)))


def cochain_from_vector(module: GModule, degree: int, vec) -> Cochain:
    r = module.rank
    values = tuple(
        tuple(int(vec[t * r + i]) for i in range(r))
        for t in range(module.group.order ** degree)
    )
    return Cochain(module, degree, values)


def coboundary(cochain: Cochain) -> Cochain:
    """The bar differential of a degree 0..2 cochain."""
    module = cochain.module
    group = module.group
    n = cochain.degree
    if n > 2:
        raise ValueError("coboundary implemented for degrees 0..2")
    values = []
    if n == 0:
        m = cochain()
        for (g,) in group_tuples(group.order, 1):
            values.append(module.add(module.act(g, m), module.neg(m)))
    elif n == 1:
        for g, h in group_tuples(group.order, 2):
            acc = module.act(g, cochain(h))
            acc = module.add(acc, module.neg(cochain(group.mul(g, h))))
            acc = module.add(acc, cochain(g))
            values.append(acc)
    else:
        for g, h, k in group_tuples(group.order, 3):
            acc = module.act(g, cochain(h, k))
            acc = module.add(acc, module.neg(cochain(group.mul(g, h), k)))
            acc = module.add(acc, cochain(g, group.mul(h, k)))
            acc = module.add(acc, module.neg(cochain(g, h)))
            values.append(acc)
    return Cochain(module, n + 1, tuple(values))


def is_cocycle(cochain: Cochain) -> bool:
    return coboundary(cochain).is_zero


def _differential_rows(group: FiniteGroup, module: GModule, n: int):
    """Rows of the degree-n differential with their moduli: one row per
    ((n+1)-tuple, coordinate), over ((n)-tuple, coordinate) positions."""
    r = module.rank
    order = group.order
    n_inputs = r * order**n
    for out in group_tuples(order, n + 1):
        if n == 0:
            (g,) = out
            mat = module.action[g]
            for i in range(r):
                row = [0] * n_inputs
                for j in range(r):
                    row[j] += mat[i][j]
                row[i] -= 1
                yield row, module.orders[i]
        elif n == 1:
            g, h = out
            mat = module.action[g]
            t_h = tuple_index(order, (h,))
            t_gh = tuple_index(order, (group.mul(g, h),))
            t_g = tuple_index(order, (g,))
            for i in range(r):
                row = [0] * n_inputs
                for j in range(r):
                    row[t_h * r + j] += mat[i][j]
                row[t_gh * r + i] -= 1
                row[t_g * r + i] += 1
                yield row, module.orders[i]
        else:
            g, h, k = out
            mat = module.action[g]
            t_hk = tuple_index(order, (h, k))
            t_ghk = tuple_index(order, (group.mul(g, h), k))
            t_ghk2 = tuple_index(order, (g, group.mul(h, k)))
            t_gh = tuple_index(order, (g, h))
            for i in range(r):
                row = [0] * n_inputs
                for j in range(r):
                    row[t_hk * r + j] += mat[i][j]
                row[t_ghk * r + i] -= 1
                row[t_ghk2 * r + i] += 1
                row[t_gh * r + i] -= 1
                yield row, module.orders[i]


def _boundary_columns(group: FiniteGroup, module: GModule, n: int) -> np.ndarray:
    """Matrix of the degree-(n-1) differential: columns indexed by
    ((n-1)-tuple, coordinate), rows by (n-tuple, coordinate)."""
    r = module.rank
    order = group.order
    rows = r * order**n
    cols = r * order ** (n - 1)
    mat = zero_matrix(rows, cols)
    out_idx = 0
    for row, modulus in _differential_rows(group, module, n - 1):
        for j, val in enumerate(row):
            if val:
                mat[out_idx, j] = val
        out_idx += 1
    return mat


@dataclass(eq=False)
class CohomologyGroup:
    """H^degree(G, M) with invariant factors, cocycle representatives, and
    the witness data needed to express any cocycle in the generators."""

    group: FiniteGroup
    module: GModule
    degree: int
    invariant_factors: tuple[int, ...]
    representatives: tuple[Cochain, ...]
    _presentation: LatticeQuotient | None = field(repr=False, default=None)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors) if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def class_of(self, cochain: Cochain) -> "CohClass":
        if cochain.module != self.module or cochain.degree != self.degree:
            raise ValueError("cochain lives in a different complex")
        if self._presentation is None:
            if self.invariant_factors:
                raise ValueError("no witness data attached")
            if not is_cocycle(cochain):
                raise ValueError("not a cocycle")
            return CohClass(self, ())
        try:
            coords = self._presentation.coordinates(cochain.to_vector())
        except NotInLattice:
            raise ValueError("not a cocycle") from None
        return CohClass(self, coords)

    def is_coboundary(self, cochain: Cochain) -> bool:
        return all(c == 0 for c in self.class_of(cochain).coordinates)

    def element(self, coordinates) -> Cochain:
        """The representative cochain with the given generator coordinates."""
        acc = zero_cochain(self.module, self.degree)
        for c, rep in zip(coordinates, self.representatives):
            acc = acc.add(rep.scale(int(c)))
        return acc

    def to_report(self) -> dict:
        return {
            "degree": self.degree,
            "invariant_factors": list(self.invariant_factors),
            "representatives": [rep.to_report() for rep in self.representatives],
        }


@dataclass(frozen=True)
class CohClass:
    parent: CohomologyGroup = field(repr=False, compare=False)
    coordinates: tuple[int, ...] = ()

    def __post_init__(self):
        reduced = tuple(
            int(c) % d for c, d in zip(self.coordinates, self.parent.invariant_factors)
        )
        object.__setattr__(self, "coordinates", reduced)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)


@lru_cache(maxsize=None)
def _cohomology_cached(group: FiniteGroup, module: GModule, degree: int, size_bound: int):
    r = module.rank
    if r == 0:
        return CohomologyGroup(group, module, degree, (), ())
    n_inputs = r * group.order**degree
    if n_inputs > size_bound:
        raise TooLarge(
            f"cochain space of dimension {n_inputs} exceeds the bound {size_bound}"
        )
    cocycles = congruence_kernel(
        n_inputs, module.exponent, _differential_rows(group, module, degree)
    )
    relations = zero_matrix(n_inputs, n_inputs)
    for t in range(group.order**degree):
        for i in range(r):
            relations[t * r + i, t * r + i] = module.orders[i]
    if degree >= 1:
        boundaries = _boundary_columns(group, module, degree)
        sub = np.concatenate([boundaries, relations], axis=1)
    else:
        sub = relations
    presentation = lattice_quotient(cocycles, sub)
    reps = tuple(
        cochain_from_vector(module, degree, presentation.generator(i))
        for i in range(len(presentation.factors))
    )
    return CohomologyGroup(
        group=group,
        module=module,
        degree=degree,
        invariant_factors=presentation.factors,
        representatives=reps,
        _presentation=presentation,
    )


def cohomology(
    group: FiniteGroup,
    module: GModule,
    degree: int,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> CohomologyGroup:
    """H^degree(G, M) for degree in {0, 1, 2}."""
    if degree not in (0, 1, 2):
        raise ValueError("degrees 0, 1, 2 are supported")
    if module.group != group:
        raise ValueError("module is not over this group")
    return _cohomology_cached(group, module, degree, size_bound)


@dataclass(eq=False)
class CohomologyMap:
    """A homomorphism between computed cohomology groups, as an integer
    matrix on invariant-factor coordinates (one column per source generator)."""

    source: CohomologyGroup
    target: CohomologyGroup
    matrix: tuple[tuple[int, ...], ...]
    label: str = ""

    def apply(self, cls: CohClass) -> CohClass:
        if cls.parent is not self.source:
            raise ValueError("class does not belong to the source group")
        coords = tuple(
            sum(row[j] * cls.coordinates[j] for j in range(len(cls.coordinates)))
            for row in self.matrix
        )
        return CohClass(self.target, coords)

    def compose(self, other: "CohomologyMap") -> "CohomologyMap":
        """self after other."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        rows = len(self.matrix)
        mid = len(other.matrix)
        cols = len(other.matrix[0]) if other.matrix else len(other.source.invariant_factors)
        mat = tuple(
            tuple(
                sum(self.matrix[i][k] * other.matrix[k][j] for k in range(mid))
                for j in range(cols)
            )
            for i in range(rows)
        )
        return CohomologyMap(other.source, self.target, mat, label=f"{self.label}*{other.label}")

    @property
    def is_zero(self) -> bool:
        b = self.target.invariant_factors
        return all(
            val % b[i] == 0 for i, row in enumerate(self.matrix) for val in row
        )

    def kernel(self) -> tuple[tuple[int, ...], tuple[CohClass, ...]]:
        """Invariant factors and generators of the kernel subgroup."""
        factors, gens = _subgroup_from_congruences(
            self.source.invariant_factors,
            [(row, self.target.invariant_factors[i]) for i, row in enumerate(self.matrix)],
        )
        return factors, tuple(CohClass(self.source, g) for g in gens)

    def image_invariants(self) -> tuple[int, ...]:
        b = self.target.invariant_factors
        if not b:
            return ()
        cols = [[self.matrix[i][j] for i in range(len(b))] for j in range(len(self.matrix[0]) if self.matrix else 0)]
        rel = zero_matrix(len(b), len(b))
        for i, d in enumerate(b):
            rel[i, i] = d
        if cols:
            span = np.concatenate([int_matrix(cols).T, rel], axis=1)
        else:
            span = rel
        basis = column_lattice_basis(span)
        return lattice_quotient(basis, rel).factors

    @property
    def is_injective(self) -> bool:
        factors, _ = self.kernel()
        return factors == ()

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.source.order == self.target.order


def _subgroup_from_congruences(ambient_factors, congruence_rows):
    """Subgroup {x in sum Z/a_j : each row . x == 0 mod its modulus}.

    Returns (invariant factors, generator coordinate tuples)."""
    s = len(ambient_factors)
    if s == 0:
        return (), ()
    moduli = [m for _, m in congruence_rows]
    exponent = lcm(*ambient_factors, *moduli) if moduli or ambient_factors else 1
    lattice = congruence_kernel(
        s, int(exponent), iter([(list(row), m) for row, m in congruence_rows])
    )
    rel = zero_matrix(s, s)
    for i, d in enumerate(ambient_factors):
        rel[i, i] = d
    quot = lattice_quotient(lattice, rel)
    gens = tuple(
        tuple(int(x) % d for x, d in zip(quot.generator(i), ambient_factors))
        for i in range(len(quot.factors))
    )
    return quot.factors, gens


def restriction(coh: CohomologyGroup, subgroup: Subgroup, size_bound: int = DEFAULT_SIZE_BOUND) -> CohomologyMap:
    """Restriction of cocycles to a subgroup, as a map of computed groups."""
    if subgroup.parent != coh.group:
        raise ValueError("subgroup belongs to a different group")
    sub_group, embed = subgroup.as_group
    sub_module = restrict_module(coh.module, subgroup)
    target = cohomology(sub_group, sub_module, coh.degree, size_bound)
    order = coh.group.order
    cols = []
    for rep in coh.representatives:
        values = tuple(
            rep.values[tuple_index(order, tuple(embed[t] for t in gs))]
            for gs in group_tuples(sub_group.order, coh.degree)
        )
        restricted = Cochain(sub_module, coh.degree, values)
        cols.append(target.class_of(restricted).coordinates)
    matrix = tuple(
        tuple(col[i] for col in cols) for i in range(len(target.invariant_factors))
    )
    return CohomologyMap(coh, target, matrix, label=f"res_{subgroup.elements}")


def inflation(
    coh: CohomologyGroup,
    proj: GroupHom,
    module: GModule,
    embedding: np.ndarray,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> CohomologyMap:
    """Inflation along G -> G/N, from coefficients in the fixed submodule.

    ``coh`` is a cohomology group of proj.target whose coefficients embed in
    ``module`` (a module over proj.source) via the integer matrix
    ``embedding`` (one column per coefficient summand).
    """
    if coh.group != proj.target:
        raise IncompatibleCoefficients("cohomology is not over the quotient group")
    if module.group != proj.source:
        raise IncompatibleCoefficients("module is not over the source group")
    emb = np.array(embedding, dtype=object)
    if emb.shape != (module.rank, coh.module.rank):
        raise IncompatibleCoefficients("embedding has the wrong shape")
    # the embedding must define an injective, equivariant homomorphism
    orders = np.array(module.orders, dtype=object)
    for j, d in enumerate(coh.module.orders):
        col = emb[:, j] * d
        if any(int(col[i]) % module.orders[i] != 0 for i in range(module.rank)):
            raise IncompatibleCoefficients("embedding does not respect the orders")
    for q in coh.group.elements():
        g = min(g for g in module.group.elements() if proj(g) == q)
        lhs = module.action_matrix(g) @ emb
        rhs = emb @ coh.module.action_matrix(q)
        for i in range(module.rank):
            for j in range(coh.module.rank):
                if (int(lhs[i, j]) - int(rhs[i, j])) % module.orders[i] != 0:
                    raise IncompatibleCoefficients("embedding is not equivariant")
    if coh.module.orders:
        rel = module.relation_matrix()
        span = np.concatenate([emb, rel], axis=1) if emb.shape[1] else rel
        if lattice_quotient(column_lattice_basis(span), rel).factors != coh.module.orders:
            raise IncompatibleCoefficients("embedding is not injective")
    target = cohomology(module.group, module, coh.degree, size_bound)
    q_order = coh.group.order
    cols = []
    for rep in coh.representatives:
        values = []
        for gs in group_tuples(module.group.order, coh.degree):
            val = rep.values[tuple_index(q_order, tuple(proj(g) for g in gs))]
            lifted = emb @ np.array(val, dtype=object) if coh.module.rank else np.zeros(module.rank, dtype=object)
            values.append(module.reduce(lifted))
        inflated = Cochain(module, coh.degree, tuple(values))
        cols.append(target.class_of(inflated).coordinates)
    matrix = tuple(
        tuple(col[i] for col in cols) for i in range(len(target.invariant_factors))
    )
    return CohomologyMap(coh, target, matrix, label="inf")


@dataclass(eq=False)
class ConjugationAction:
    """Action of G/N on H^n(N, M) by conjugation of cochains:
    (g.f)(n_1, ...) = g.f(g^-1 n_1 g, ...)."""

    cohomology: CohomologyGroup
    quotient_group: FiniteGroup
    projection: GroupHom
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def matrix(self, q: int) -> tuple[tuple[int, ...], ...]:
        return self.matrices[q]

    def invariant_factors_of_fixed_subgroup(self) -> tuple[int, ...]:
        factors, _ = self.fixed_subgroup()
        return factors

    def fixed_subgroup(self):
        b = self.cohomology.invariant_factors
        rows = []
        for q in self.quotient_group.elements():
            mat = self.matrices[q]
            for i in range(len(b)):
                row = [mat[i][j] - (1 if i == j else 0) for j in range(len(b))]
                rows.append((row, b[i]))
        return _subgroup_from_congruences(b, rows)

    def is_trivial_action(self) -> bool:
        ident = tuple(
            tuple(1 if i == j else 0 for j in range(len(self.cohomology.invariant_factors)))
            for i in range(len(self.cohomology.invariant_factors))
        )
        b = self.cohomology.invariant_factors
        return all(
            all(
                (self.matrices[q][i][j] - ident[i][j]) % b[i] == 0
                for i in range(len(b))
                for j in range(len(b))
            )
            for q in self.quotient_group.elements()
        )


def conjugation_on_cohomology(
    group: FiniteGroup,
    normal: Subgroup,
    module: GModule,
    degree: int,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> ConjugationAction:
    """The G/N-action on H^degree(N, M) for a normal subgroup N."""
    sub_group, embed = normal.as_group
    pos = {g: i for i, g in enumerate(embed)}
    sub_module = restrict_module(module, normal)
    coh = cohomology(sub_group, sub_module, degree, size_bound)
    q_group, proj = quotient(group, normal)
    reps = [
        min(g for g in group.elements() if proj(g) == q) for q in q_group.elements()
    ]

    def conjugated_matrix(g: int):
        g_inv = group.inv(g)
        cols = []
        for rep in coh.representatives:
            values = []
            for gs in group_tuples(sub_group.order, degree):
                conj = tuple(
                    pos[group.mul(group.mul(g_inv, embed[t]), g)] for t in gs
                )
                val = rep.values[tuple_index(sub_group.order, conj)]
                values.append(module.act(g, val))
            moved = Cochain(sub_module, degree, tuple(values))
            cols.append(coh.class_of(moved).coordinates)
        return tuple(
            tuple(col[i] for col in cols) for i in range(len(coh.invariant_factors))
        )

    matrices = tuple(conjugated_matrix(reps[q]) for q in q_group.elements())
    # inner conjugations must act trivially on cohomology
    b = coh.invariant_factors
    for n in normal.elements:
        mat = conjugated_matrix(n)
        for i in range(len(b)):
            for j in range(len(b)):
                expected = 1 if i == j else 0
                assert (mat[i][j] - expected) % b[i] == 0, "inner action is not trivial"
    return ConjugationAction(
        cohomology=coh, quotient_group=q_group, projection=proj, matrices=matrices
    )


def sha_finite(
    group: FiniteGroup,
    module: GModule,
    family,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> CohomologyGroup:
    """Classes of H^1(G, M) restricting to zero on every subgroup in the
    family: the finite-coefficient locally-trivial kernel."""
    family = list(family)
    if not family:
        raise ValueError("the family of subgroups must be nonempty")
    h1 = cohomology(group, module, 1, size_bound)
    if h1.is_trivial:
        return CohomologyGroup(group, module, 1, (), ())
    rows = []
    for sub in family:
        res = restriction(h1, sub, size_bound)
        for i, row in enumerate(res.matrix):
            rows.append((list(row), res.target.invariant_factors[i]))
    factors, gens = _subgroup_from_congruences(h1.invariant_factors, rows)
    reps = tuple(h1.element(g) for g in gens)
    return CohomologyGroup(
        group=group,
        module=module,
        degree=1,
        invariant_factors=factors,
        representatives=reps,
    )
