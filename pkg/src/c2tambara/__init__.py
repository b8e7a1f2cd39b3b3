"""Exact algebra for C2-equivariant Green and Tambara functors."""

from .gsets import (
    EMPTY, FREE_ORBIT, POINT, ExponentialDiagram, GMap, GSet, IndexingSystem,
    coproduct, dependent_product, exponential_diagram, fold, identity_map,
    is_member, pullback, quotient_map,
)
from .functors import (
    FIXED, UNDERLYING, Burnside, FiniteGreenFunctor, FiniteTambaraFunctor,
    GreenFunctor, Report, TambaraFunctor, burnside, burnside_mod,
    check_green_axioms, check_tambara_axioms, cyclic_ring,
    fixed_point_functor, one_element_green, one_element_tambara, product_ring,
)
from .bispans import (
    Bispan, ElementTuple, FormalSum, compose, evaluate, identity_bispan,
    make_N, make_R, make_T, product,
)
from .free import (
    FREE_GREEN_FIXED, FREE_GREEN_UNDERLYING, FREE_TAMBARA_FIXED,
    FREE_TAMBARA_UNDERLYING, basis_to_bispan, comap_images, green_hom_extend,
    yoneda_check,
)
from .adjoint import construct, counit_map, transpose, unit_map, untranspose, verify_adjunction

__version__ = "0.1.0"
