"""
Utility functions: seeded randomness, fingerprints, input loading and JSON output
"""

import hashlib
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import ValidationError

from config import FIXTURES_DIR, LOG_FORMAT, LOG_LEVEL, MANIFEST_NAME
from errors import InputDocumentError, ReportWriteError
from models import InputDocument

logger = logging.getLogger(__name__)

# ============ LOGGING ============

def setup_logging(level: Optional[str] = None) -> None:
    """Configure root logging on stderr so stdout stays machine-readable"""
    logging.basicConfig(
        level=getattr(logging, (level or LOG_LEVEL).upper(), logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )

# ============ RANDOMNESS ============

def rng_stream(seed: int, stream: str) -> random.Random:
    """Independent PRNG for one named purpose; identical (seed, stream) gives identical draws"""
    return random.Random(f"{seed}:{stream}")

# ============ FINGERPRINTS ============

def fingerprint(lines: Iterable[str]) -> str:
    digest = hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()
    return digest[:16]

# ============ INPUT ============

def resolve_input_path(name: str) -> Path:
    """Paths are taken as given; bare fixture names such as 'FIX-C' resolve in the fixtures directory"""
    path = Path(name)
    if path.exists():
        return path
    for candidate in (FIXTURES_DIR / name, FIXTURES_DIR / f"{name}.json"):
        if candidate.exists():
            return candidate
    raise InputDocumentError(f"input file not found: {name}")


def load_input_document(name: str) -> Tuple[Path, InputDocument]:
    path = resolve_input_path(name)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise InputDocumentError(f"{path} is not valid JSON: {e}") from e
    except UnicodeDecodeError as e:
        raise InputDocumentError(f"{path} is not UTF-8 text: {e}") from e
    except OSError as e:
        raise InputDocumentError(f"cannot read {path}: {e}") from e
    try:
        doc = InputDocument.model_validate(raw)
    except ValidationError as e:
        raise InputDocumentError(f"{path} is not a valid input document", {"errors": e.error_count()}) from e
    logger.info(f"✅ Loaded {path.name}: {len(doc.matrix)}x{len(doc.matrix[0])} matrix over {doc.variables}")
    return path, doc


def load_manifest() -> Dict[str, Any]:
    path = FIXTURES_DIR / MANIFEST_NAME
    if not path.exists():
        return {}
    return json.loads(path.read_text(encoding="utf-8"))


def list_fixtures() -> List[Path]:
    return sorted(p for p in FIXTURES_DIR.glob("*.json") if p.name != MANIFEST_NAME)

# ============ OUTPUT ============

def dumps_canonical(payload: Dict[str, Any]) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline"""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, payload: Dict[str, Any]) -> None:
    try:
        Path(path).write_text(dumps_canonical(payload), encoding="utf-8")
    except OSError as e:
        raise ReportWriteError(f"cannot write {path}: {e}") from e
    logger.info(f"✅ Wrote {path}")
