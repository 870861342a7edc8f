"""Exact Bernstein-center, base-change and cone calculus for parahoric Hecke
algebras over rank <= 3 root data."""

from .affine import (
    AlcovePoint,
    CosetTable,
    ExtAffineWeylElement,
    ParahoricType,
    affine_context,
    fixes_facet,
    iwasawa_cell,
    iwasawa_cell_match,
    min_coset_reps,
    omega_group,
    pgj_representatives,
    theta_fixed_reps,
)
from .basechange import (
    BaseChangeContext,
    base_change,
    central_product,
    dual_norm,
    fixed_product,
    norm_invariants,
    star_product,
    verify_bc_change_parahoric,
    verify_bc_constant_term,
    verify_bc_w_conjugation,
    verify_spectral_characterization,
)
from .cones import (
    CompactTraceFunctional,
    ConeCalculus,
    ConeContext,
    arthur_sum,
    atiyah_bott_trace,
    chamber_decomposition,
    compact_trace_scalar,
    h_map,
    tau,
    tau_hat,
    unitary_part_invariance,
    wprime_set,
)
from .hecke import (
    CentralElement,
    HeckeAlgebra,
    HeckeElement,
    StructureCache,
    bernstein_function,
    change_parahoric,
    indicator_J,
    is_central,
    multiply,
    orbit_sum,
    poincare_polynomial,
    theta_element,
    to_parahoric,
)
from .laurent import Laurent, LaurentFrac, LaurentScalar, MLaurent
from .rootdata import (
    BasedRootDatum,
    DiagramAutomorphism,
    RelativeDatum,
    build_root_datum,
    flip_automorphism,
    fold,
    identity_automorphism,
    load_datum_config,
    weyl_elements,
    weyl_orbit,
)
from .spectral import (
    PrincipalSeriesModel,
    UnramifiedCharacter,
    act,
    central_scalar,
    closed_form_scalar,
    constant_term_spectral,
    fourier_transform,
    jfixed_dimension,
    parse_character,
    symbolic_character,
)

__version__ = "0.1.0"
