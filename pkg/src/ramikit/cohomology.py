"""Degree-one cohomology with coefficients in a prime field.

For any group given by a presentation, classes of H^1 with F_p coefficients
are the homomorphisms to F_p, i.e. the vectors on the generators killing
every relator's exponent vector mod p.  A class is meridionally unramified
when it also kills every inertia generator; because inertia subgroups are
cyclic and conjugation acts trivially on homomorphisms to an abelian group,
killing the finitely many orbit representatives is equivalent to vanishing
on every meridional inertia subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import fp_nullspace, fp_rank, is_prime, NotPrime
from .presentations import Presentation, abelianization
from .ramification import InertiaDatum
from .rewriting import SubgroupPresentation


@dataclass(frozen=True)
class FpSubspace:
    """A subspace of the F_p vector space on the generators."""

    p: int
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def h1_dim(pres: Presentation, p: int) -> int:
    """dim Hom(group, F_p) = generators - rank_p(exponent matrix)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return pres.n_generators - fp_rank(pres.exponent_matrix(), p)


def unramified_subspace(spres: SubgroupPresentation,
                        inertia: tuple[InertiaDatum, ...],
                        p: int) -> FpSubspace:
    """The classes of H^1(U; F_p) vanishing on every meridional inertia
    subgroup: the joint nullspace of the relator rows and the inertia
    generator exponent rows."""
    n = spres.presentation.n_generators
    rows = spres.presentation.exponent_matrix()
    rows += [d.generator_in_u.exponent_vector(n) for d in inertia]
    basis = fp_nullspace(rows, p, n_cols=n)
    return FpSubspace(p=p, ambient_dim=n, basis=tuple(map(tuple, basis)))


@dataclass(frozen=True)
class CheckReport:
    """Result of the inflation comparison at one prime."""

    p: int
    dim_h1_u: int
    dim_unramified: int
    dim_h1_quotient: int
    inflation_bijective: bool
    note: str

    @property
    def passed(self) -> bool:
        return (self.dim_unramified == self.dim_h1_quotient
                and self.inflation_bijective)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "dim_h1_U": self.dim_h1_u,
            "dim_unramified": self.dim_unramified,
            "dim_h1_quotient": self.dim_h1_quotient,
            "inflation_bijective": self.inflation_bijective,
            "note": self.note,
        }


_PROFINITE_NOTE = (
    "Since the cover subgroup is finitely generated, homomorphisms to F_p "
    "from its profinite completion are automatically continuous and restrict "
    "bijectively to ordinary homomorphisms; this check therefore also "
    "certifies the profinite form of the unramified-class statement."
)


def inflation_check(spres: SubgroupPresentation, quotient_pres: Presentation,
                    inertia: tuple[InertiaDatum, ...], p: int) -> CheckReport:
    """Verify that inflation identifies H^1 of the unramified quotient with
    the unramified subspace of H^1 of the cover subgroup.

    The quotient's H^1 dimension is computed twice, independently: by mod-p
    rank of its exponent matrix and from its integral abelian invariants via
    Smith normal form.  Inflation is the identity on generator coordinates,
    so bijectivity amounts to each quotient class lying in the unramified
    subspace plus equality of dimensions.
    """
    if quotient_pres.generator_names != spres.presentation.generator_names:
        raise ValueError("quotient presentation must share the cover generators")
    n = quotient_pres.n_generators
    dim_u = h1_dim(spres.presentation, p)
    unram = unramified_subspace(spres, inertia, p)
    dim_quotient = h1_dim(quotient_pres, p)
    snf_dim = abelianization(quotient_pres).hom_dim_to_fp(p)
    if snf_dim != dim_quotient:
        raise AssertionError(
            "mod-p rank and integral invariants disagree on the quotient H^1")

    # every quotient class must already lie in the unramified subspace ...
    quotient_basis = fp_nullspace(quotient_pres.exponent_matrix(), p, n_cols=n)
    stacked = list(unram.basis) + quotient_basis
    injects = fp_rank(quotient_basis, p) == len(quotient_basis) if quotient_basis else True
    contained = fp_rank(stacked, p) == unram.dim if stacked else True
    bijective = (injects and contained and dim_quotient == unram.dim)
    return CheckReport(
        p=p,
        dim_h1_u=dim_u,
        dim_unramified=unram.dim,
        dim_h1_quotient=dim_quotient,
        inflation_bijective=bijective,
        note=_PROFINITE_NOTE,
    )
