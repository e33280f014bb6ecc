"""Spectral spread of K_r-minor-free graphs: exact minors, join spectra, extremal search."""

from __future__ import annotations

from .errors import (
    DomainError,
    Graph6Error,
    MinorSpreadError,
    NumericalError,
    SeriesDivergenceError,
    UnsupportedSizeError,
)
from .graph import (
    FamilySpec,
    Graph,
    canonical_code,
    canonical_form,
    canonical_labeling,
    complete,
    disjoint_union,
    emit_graph6,
    empty,
    intersection_lower_bound,
    is_isomorphic,
    join,
    join_star_edges,
    make_family,
    parse_graph6,
)
from .join_series import (
    JoinModel,
    MomentVector,
    SeriesCoefficients,
    c2_upper_bound_chain,
    closed_form_extremal_spread,
    extremal_join_extremes,
    gamma,
    join_spectrum,
    moments,
    second_order_spread,
    secular_extremes,
    secular_roots,
    series_coefficients,
    truncated_series_extremes,
    zagreb_bound,
    zagreb_index,
)
from .minor import (
    EdgeBoundReport,
    MinorCertificate,
    contraction_hadwiger,
    edge_bound_report,
    hadwiger_number,
    has_biclique_minor,
    has_clique_minor,
    verify_certificate,
)
from .search import (
    SearchAborted,
    SearchReport,
    enumerate_graphs,
    ingest_graph6_stream,
    luv_partition,
    max_edges_minor_free,
    rewire_to_join,
    search_max_spread,
    structure_check,
)
from .spectral import Spectrum, SpreadReport, matrix_spectrum, spectrum, spread, weyl_sandwich_check

__version__ = "0.1.0"
