"""Exact finite-depth calculus for derivatives of rational point sets.

Terms describe compact-ish subsets of the line symbolically; every
operation (membership, derivative, signature, recovery) is computed with
Fraction arithmetic, never floats.
"""

from .cubes import (
    Box, BoxUnion, FrameRegion, ProductFamily, box_components, chain_sizes,
    frame_holes, frame_region, frame_unit_decomposition, product_member,
    recover_S_cubes,
)
from .derive import (
    CBProfile, cb_profile, derive, kernel_split, signature,
)
from .errors import (
    ChainIntractableError, HorizonExceededError, NotIntervalUnionError,
    NotSupportedError, NotTotallyDisconnectedError, NotWellOrderedError,
    ProfileMismatchError, ScatterlabError, UndecidablePairError,
    ValidationError,
)
from .families import (
    FamilySpec, FramesFamily, build_An, build_AS, build_family, build_frames,
    build_Kn, build_Ug, build_XS, build_Xu, build_YS_prop3, build_YS_td,
    build_Zn, discrete_approximant, g_group, lift_cubes,
    representative_points, true_gaps,
)
from .linear import (
    ComponentEntry, ComponentList, LinearRecovery, bits_profile, boundary,
    closure, components_upto, compress, recover_S_linear,
)
from .ordertype import (
    OMEGA, ORD_ONE, ORD_ZERO, Fin, OmegaSeq, Sum, Zeta, bits_of_order_type,
    omega_pow, ord_add, ord_fin, ord_mul_omega, render_lin, render_ord,
    scattered_order_type, ug_order_type,
)
from .rat import Rat, format_rat, parse_rat, pow2, rat
from .setcore import (
    Approximation, enumerate_term, intersect_points, meets, member,
    points_in, resolved_frontier, true_max, true_min,
)
from .terms import (
    EMPTY, Affine, Cantor, Empty, EndpointSet, FWrap, Interval, Ladder,
    Mirror, Point, PtSetTerm, Thicken, Union, bounds, canonical, struct_key,
)
from .verify import (
    DiscreteCertificate, DistinguishReport, LemmaVerdict, cluster_profile,
    discrete_certificate, distinguish_matrix, lemma_checks,
    numeric_limit_points, probe_equal, prop1_index,
)

__version__ = "0.1.0"
