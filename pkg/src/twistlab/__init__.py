"""Exact computations in mapping class groups of nonorientable surfaces with one boundary component."""

from twistlab.errors import OneSidedCurve, ParseError, WordGrowthOverflow
from twistlab.expressions import evaluate_source, parse, to_source
from twistlab.homology import (
    IntMatrix,
    abelianize,
    double_cover_h1,
    double_cover_lift,
    gamma_prime_member,
    preserves_character,
    transvection_rank_lower_bound,
)
from twistlab.mapclass import (
    ConjugatedTwist,
    MappingClass,
    braid_with,
    commutes,
    mc_equal,
    power,
    twist_about,
)
from twistlab.relations import RelationFixture, find_triangle, run_suite, verify_relation
from twistlab.surface import (
    Basic,
    Linking,
    Pushed,
    SurfaceModel,
    build_model,
    crosscap_transposition,
    curve_word,
    elementary_twist,
    linked,
    validate_table,
)
from twistlab.words import (
    AutWitness,
    CyclicWord,
    FreeMap,
    Word,
    apply_map,
    compose,
    conjugate,
    equal_maps,
    invert_word,
    multiply,
    reduce,
    verify_inverse,
)

__all__ = [
    "AutWitness", "Basic", "ConjugatedTwist", "CyclicWord", "FreeMap", "IntMatrix",
    "Linking", "MappingClass", "OneSidedCurve", "ParseError", "Pushed", "RelationFixture",
    "SurfaceModel", "Word", "WordGrowthOverflow", "abelianize", "apply_map", "braid_with",
    "build_model", "commutes", "compose", "conjugate", "crosscap_transposition", "curve_word",
    "double_cover_h1", "double_cover_lift", "elementary_twist", "equal_maps", "evaluate_source",
    "find_triangle", "gamma_prime_member", "invert_word", "linked", "mc_equal", "multiply",
    "parse", "power", "preserves_character", "reduce", "run_suite", "to_source",
    "transvection_rank_lower_bound", "twist_about", "validate_table", "verify_inverse",
    "verify_relation",
]
