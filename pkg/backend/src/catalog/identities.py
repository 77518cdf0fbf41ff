"""Loading and filtering the identity suite stored as ``*.qid`` files."""
import fnmatch
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.errors import CatalogError, ExprSyntaxError, QSeriesError
from src.expr.ast import Identity
from src.expr.parser import parse_identities

logger = logging.getLogger(__name__)

SUFFIX = ".qid"


def load_file(path: Union[str, Path]) -> List[Identity]:
    path = Path(path)
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as e:
        raise CatalogError(f"cannot read {path}: {e}") from e
    try:
        return parse_identities(text, source=path.stem)
    except ExprSyntaxError as e:
        line = text.count("\n", 0, e.offset) + 1
        raise CatalogError(f"{path.name}:{line}: {e}") from e
    except QSeriesError as e:
        raise CatalogError(f"{path.name}: {e}") from e


@lru_cache(maxsize=8)
def _load_directory(directory: str) -> Tuple[Identity, ...]:
    files = sorted(Path(directory).glob(f"*{SUFFIX}"))
    if not files:
        raise CatalogError(f"no {SUFFIX} files under {directory}")
    seen: Dict[str, str] = {}
    identities: List[Identity] = []
    for path in files:
        for identity in load_file(path):
            if identity.name in seen:
                raise CatalogError(f"identity {identity.name!r} defined in both {seen[identity.name]} and {path.stem}")
            seen[identity.name] = path.stem
            identities.append(identity)
    logger.info(f"📂 Loaded {len(identities)} identities from {len(files)} catalog files")
    return tuple(identities)


def load_catalog(directory: Union[str, Path]) -> Tuple[Identity, ...]:
    return _load_directory(str(Path(directory).resolve()))


def matches(identity: Identity, pattern: Optional[str]) -> bool:
    """``None`` and ``"all"`` match everything; otherwise a glob on the name or the file stem."""
    if pattern is None or pattern == "all":
        return True
    if fnmatch.fnmatchcase(identity.name, pattern):
        return True
    return identity.source is not None and fnmatch.fnmatchcase(identity.source, pattern)


def list_identities(directory: Union[str, Path], pattern: Optional[str] = None) -> List[Identity]:
    return [i for i in load_catalog(directory) if matches(i, pattern)]


def find_identity(directory: Union[str, Path], name: str) -> Identity:
    for identity in load_catalog(directory):
        if identity.name == name:
            return identity
    raise CatalogError(f"no identity named {name!r}")
