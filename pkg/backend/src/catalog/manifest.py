"""Completeness audit over manifest.csv.

Each row ties a source label to a topic and a catalog identity. Every topic
must map to at least one present identity, and so must every theorem,
corollary, proposition or lemma label. Other labels (bare equations) with no
present identity are reported as unmapped without failing the audit.
"""
import logging
from pathlib import Path
from typing import Iterable, List, Set, Union

import pandas as pd

from src.errors import CatalogError, ManifestIncomplete
from src.expr.ast import Identity

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ("label", "topic", "identity")
STATEMENT_KINDS = frozenset({"theorem", "corollary", "proposition", "lemma"})


def read_manifest(path: Union[str, Path]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, comment="#", skipinitialspace=True, keep_default_na=False)
    except (OSError, pd.errors.ParserError) as e:
        raise CatalogError(f"cannot read manifest {path}: {e}") from e
    missing = set(MANIFEST_COLUMNS) - set(frame.columns)
    if missing:
        raise CatalogError(f"manifest {path} lacks columns {sorted(missing)}")
    frame = frame.loc[:, list(MANIFEST_COLUMNS)].apply(lambda column: column.str.strip())
    return frame.loc[(frame != "").any(axis=1)].reset_index(drop=True)


def _label_coverage(frame: pd.DataFrame, names: Set[str]) -> pd.Series:
    """label -> whether any of its rows names a present identity, in manifest order."""
    labelled = frame.loc[frame["label"] != ""]
    return labelled.assign(present=labelled["identity"].isin(names)).groupby("label", sort=False)["present"].any()


def _is_statement(label: str) -> bool:
    return label.partition(":")[0] in STATEMENT_KINDS


def audit(identities: Iterable[Identity], path: Union[str, Path]) -> List[str]:
    """Problems found: unknown identities, uncovered topics and unmapped statement labels."""
    names = {i.name for i in identities}
    frame = read_manifest(path)
    rows = frame.loc[frame["identity"] != ""]
    rows = rows.assign(present=rows["identity"].isin(names))
    problems = [
        f"row {topic!r} -> {name!r}: no such identity"
        for topic, name in rows.loc[~rows["present"], ["topic", "identity"]].itertuples(index=False)
    ]
    problems.extend(f"identity {name!r} is listed without a topic" for name in rows.loc[rows["topic"] == "", "identity"])
    covered = rows.loc[rows["topic"] != ""].groupby("topic", sort=True)["present"].any()
    problems.extend(f"topic {topic!r} has no catalog identity" for topic, ok in covered.items() if not ok)
    labels = _label_coverage(frame, names)
    problems.extend(
        f"label {label!r} has no catalog identity" for label, ok in labels.items() if not ok and _is_statement(label)
    )
    logger.info(f"📋 Manifest: {covered.sum()}/{len(covered)} topics, {labels.sum()}/{len(labels)} labels covered")
    return problems


def unmapped_labels(identities: Iterable[Identity], path: Union[str, Path]) -> List[str]:
    """Labels, in manifest order, with no row naming a present identity."""
    labels = _label_coverage(read_manifest(path), {i.name for i in identities})
    return [label for label, ok in labels.items() if not ok]


def check_manifest(identities: Iterable[Identity], path: Union[str, Path]) -> None:
    problems = audit(identities, path)
    if problems:
        raise ManifestIncomplete(problems)
