"""Ramification data for finite covers of knot exteriors.

Pipeline: parse or build a presentation with a distinguished meridian, pick
a finite-index subgroup (coset table), rewrite its presentation, read off
the meridional inertia data and the maximal meridionally unramified
quotient, and verify the structural statements in finite quotients.
"""

from .cohomology import CheckReport, FpSubspace, h1_dim, inflation_check, \
    unramified_subspace
from .cosets import (CosetLimitExceeded, CosetTable, CyclicCover,
                     GeneratorWords, IncompatiblePermRep, PermRep,
                     SubgroupSpec, generator_permutations,
                     low_index_subgroups, todd_coxeter, trace)
from .harness import Census, build_census, run_suites
from .linalg import (AbelianInvariants, NotPrime, fp_nullspace, fp_rank,
                     smith_normal_form)
from .parsing import (ParseError, UnknownGeneratorError, parse_presentation,
                      parse_word, presentation_to_text, word_to_text)
from .pdcodes import PDCode, PDCodeError, wirtinger_from_pd
from .presentations import (KnotGroupData, KnotValidationError, Presentation,
                            ValidationReport, abelianization,
                            validate_knot_group)
from .ramification import (BoundaryReport, FactoringResult, FiniteQuotient,
                           InertiaDatum, LongitudeMissing, RamificationReport,
                           RelatorNotKilled, boundary_components,
                           factoring_check, inertia_data,
                           quotient_image_of_ramification,
                           ramification_report, restrict_quotient,
                           unramified_quotient)
from .rewriting import (NotInSubgroup, SchreierData, SubgroupPresentation,
                        reidemeister_schreier, rewrite, schreier_transversal)
from .shadows import (MeridianClassNotPreserved, NotContainedInU,
                      NotIsomorphism, NotNormal, ShadowReport,
                      TransportReport, closure_shadow_check,
                      inertia_transport_check)
from .words import Word, cyclically_reduce, free_reduce

__version__ = "0.1.0"
