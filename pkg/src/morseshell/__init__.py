"""Morse tiles, tilings and shellings of finite simplicial complexes,
with compatible discrete vector fields and Morse functions."""

from .complexes import (
    BarycentricSubdivision,
    SimplicialComplex,
    Simplex,
    barycentric_subdivision,
    betti_numbers_mod2,
    connected_components,
    euler_characteristic,
    faces_of,
    is_closed_surface,
    link,
    make_complex,
    simplex,
    single_face_intersection,
    skeleton,
    star,
)
from .tiles import (
    EMPTY_TILE,
    MorseTile,
    NotMorseTileError,
    TileKind,
    boundary_partition,
    codim1_partition,
    cone,
    critical_tile,
    normalize_tile,
    skeleton_partition,
    standard_morse_tile,
    standard_tile,
    tile_chi,
)
from .tiling import (
    CriticalVector,
    HTable,
    MorseTiling,
    NotShellableError,
    SearchBudgetExceeded,
    TilingReport,
    classical_shelling_order,
    critical_vector,
    h_table,
    pack_simplices,
    search_shelling,
    skeleton_tiling,
    subdivide_tile,
    subdivide_tiling,
    validate_shelling,
    validate_tiling,
)
from .morse import (
    CyclicFieldError,
    DiscreteMorseFunction,
    DiscreteVectorField,
    compatible_field,
    critical_cells,
    find_closed_vpath,
    gradient_of,
    is_vpath,
    morse_function,
    morse_inequalities_report,
    tile_field,
    validate_field,
    validate_morse_function,
)
from .generators import (
    HANDLE_VARIANTS,
    PrismTriangulation,
    handle_tiling,
    prism_triangulation,
    shell_surface,
)
from .words import (
    Annulus,
    CyclicWord,
    RewriteStep,
    annulus_of_word,
    apply_step,
    reduce_word,
    word,
    word_compress,
    word_of_annulus,
    word_subdivide,
    word_suppress,
)

__version__ = "0.1.0"
