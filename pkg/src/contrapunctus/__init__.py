"""contrapunctus: counterpoint engine on finite morphism worlds."""

from .closure import (
    ClosureOperator,
    KuratowskiReport,
    close_involutive,
    close_iterated,
    close_single_step,
    verify_kuratowski,
)
from .counterpoint import (
    ContrapuntalContext,
    SymmetryReport,
    admitted_next_intervals,
    admitted_pairs,
    commutes_with_polarity,
    counterpoint_symmetries,
    deformed_consonances,
    deformed_dissonances,
    is_deformed_dissonance,
    restricted_family,
    successors_document,
    successors_table,
)
from .errors import (
    AdmissibilityError,
    CarrierMismatchError,
    ContrapunctusError,
    InvalidPolarityError,
    ParseError,
    SizeCapError,
    StructuralError,
    WorldMismatchError,
)
from .fuzzy import FuzzyConsonance, is_crisp, pseudocomplement
from .lattice import (
    Carrier,
    MapTable,
    SubSet,
    complement,
    fixed_point_free,
    image,
    join,
    meet,
)
from .polarity import (
    Dichotomy,
    DichotomyClass,
    classify_dichotomies,
    dichotomies_for,
    dichotomy_for,
    enumerate_quasipolarities,
    find_dichotomy,
    is_dichotomy,
    is_quasipolarity,
    is_strong,
    quasipolarities_for,
    search_nonpolar_quasipolarity,
)
from .worlds import (
    AffineWorld,
    DualElement,
    DualWorld,
    FinSetWorld,
    Morphism,
    PowerSetWorld,
    SymAffineWorld,
    World,
    dual_lift,
    parse_morphism,
    parse_world,
)

__version__ = "0.1.0"
