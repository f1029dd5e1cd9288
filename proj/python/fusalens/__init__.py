"""Functional-safety project graphs: checks, tracing, comparison and layout."""

from ._fusalens import (
    Error,
    InvalidArgument,
    NotFoundError,
    ParseError,
    Project,
    Store,
    ValidationFailed,
    asil_from_sec,
    check_asil_inheritance,
    check_missing_links,
    cross_highlight,
    filter_by_degree,
    find_orphans,
    find_path,
    find_unassigned_asil,
    fixture_ids,
    layout,
    shared_links,
    shared_nodes,
    shared_subgraph,
    summarize,
    trace,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Error",
    "InvalidArgument",
    "NotFoundError",
    "ParseError",
    "Project",
    "Store",
    "ValidationFailed",
    "asil_from_sec",
    "check_asil_inheritance",
    "check_missing_links",
    "cross_highlight",
    "filter_by_degree",
    "find_orphans",
    "find_path",
    "find_unassigned_asil",
    "fixture_ids",
    "layout",
    "shared_links",
    "shared_nodes",
    "shared_subgraph",
    "summarize",
    "trace",
    "validate",
]
