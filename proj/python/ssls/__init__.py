"""Socio-spatial location selection: pick k of a user's check-in locations."""

from ._ssls import (
    ALGORITHMS,
    Context,
    DataError,
    DomainError,
    Graph,
    IneligibleQueryError,
    NotFoundError,
    ParseError,
    Result,
    diversity,
    eligible_users,
    load_fixture,
    load_graph,
    load_snapshot,
    mmd,
    precision,
    query_context,
    relevance,
    result_json,
    score,
    select,
    social_coverage,
    social_entropy,
    synthetic_context,
)

__all__ = [name for name in dir() if not name.startswith("_")]
