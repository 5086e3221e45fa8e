"""oakit: a finite-model toolkit for overlap algebras.

Finite lattices are carried as integer-indexed tables; everything else
(positivity, overlap axioms, daggers, products, equalizers, nuclei,
regular opens) is built on top with explicit cross-checks between
independent formulations.
"""
from .config import Caps, default_caps
from .errors import (
    AntisymmetryViolation,
    CrossCheckFailed,
    NotABase,
    NotAFrame,
    NotALattice,
    NotANucleus,
    NotATopology,
    NotJoinPreserving,
    NotSymmetrizable,
    OakitError,
    ParseError,
    PreconditionFailed,
    ShapeMismatch,
    SizeCap,
    ValidationError,
)
from .lattice import (
    FinLattice,
    FinPoset,
    FrameReport,
    Topology,
    downset_lattice,
    frame_report,
    lattice_from_poset,
    open_set_lattice,
    order_iso,
    poset_from_leq,
    poset_from_pairs,
    powerset_lattice,
    product_lattice,
    sublattice_on,
    topo_ops,
    topology_from_opens,
)
from .overlap import (
    AtomReport,
    OverlapReport,
    PositivityReport,
    atom_report,
    atoms_and_iso,
    booleanize,
    check_overlap_algebra,
    check_positivity_predicate,
    join_irreducibles,
    overlap,
    positivity,
)
from .maps import (
    LatticeMap,
    MorphismReport,
    Relation,
    SymmetricPairReport,
    adjoints,
    compose,
    dagger,
    enumerate_join_maps,
    enumerate_ofrm_arrows,
    identity_map,
    image_factorization,
    is_sub_oalgebra,
    join_map,
    left_adjoint,
    map_to_rel,
    morphism_report,
    preserves_finite_meets,
    preserves_implication,
    rel_compose,
    rel_dagger,
    rel_to_map,
    right_adjoint,
    symmetric_pair_report,
)
from .cats import (
    CounterexampleReport,
    EqualizerWitness,
    PowFunctorReport,
    ProductWitness,
    WeakEqualizerReport,
    ZeroObjectReport,
    equalizer_search,
    oa_product,
    ofrm_equalizer,
    pow_functor_report,
    replay_counterexample,
    tupling,
    weak_equalizer_check,
    zero_object_check,
)
from .subloc import (
    BijectionReport,
    Nucleus,
    OpenSublocaleReport,
    enumerate_nuclei,
    nucleus,
    open_sublocale_report,
    regular_open_algebra,
    standard_nuclei,
    sublocale_frame,
    sublocale_joinmap_bijection,
)
from .corpus import (
    acceptance_frames,
    all_posets,
    all_topologies,
    boolean_algebras,
    chain,
    diamond,
    pentagon,
)

__version__ = "0.1.0"
