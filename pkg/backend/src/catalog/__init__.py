from src.catalog.identities import find_identity, list_identities, load_catalog, load_file, matches
from src.catalog.manifest import audit, check_manifest, read_manifest, unmapped_labels
from src.catalog.verifier import (
    REPORT_COLUMNS,
    Report,
    SuiteSummary,
    check_instance,
    format_params,
    instances,
    render_report,
    summarize,
    verify,
    verify_suite,
    write_report,
)

__all__ = [
    "find_identity", "list_identities", "load_catalog", "load_file", "matches",
    "audit", "check_manifest", "read_manifest", "unmapped_labels",
    "REPORT_COLUMNS", "Report", "SuiteSummary", "check_instance", "format_params", "instances", "render_report",
    "summarize", "verify", "verify_suite", "write_report",
]
