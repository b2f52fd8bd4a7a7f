"""Executable set theory at finite scale: ordinals below epsilon_0, finite
well-orders, forcing posets and generic filters, almost-disjoint families and
regular open completions."""

from .errors import (FuelExhausted, IncompatibleError, LoadError, NotAWellOrder, PosetError,
                     PropertyViolation, SetforceError, SizeLimitError, UnknownElement)
from .ordinal import (OMEGA, ONE, ZERO, Cmp, Ordinal, OrdinalKind, add, classify, compare,
                      from_nat, mul, parse, pow, recurse_omega, sup_list)
from .wellorder import (Case, FiniteRelation, OrderReport, TrichotomyResult, cantor_no_surjection,
                        chain, check_order_properties, order_type_small, pred, product_order,
                        sum_order, trichotomy)
from .poset import (BinaryCondition, DefinedAt, DisagreesWith, FilterResult, FinitePoset,
                    LazyPoset, compatible, dpq_dense, fip_check, generic_filter, is_antichain,
                    is_dense, is_filter, is_ultrafilter, k_poset, k_window, union_of_filter)
from .adfamily import (Condition, Dx, Eyn, SetGen, ad_check, dense_witness, diagonalize,
                       extract_d, pa_compatible, pa_leq, pa_poset, triangular_family)
from .completion import (DownSetTopology, RegularOpenAlgebra, StoneSpace, ba_laws_check,
                         regularize, ro_algebra, stone_ccc_check, stone_space, verify_embedding)

__version__ = "0.1.0"
