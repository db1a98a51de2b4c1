import io
import logging
import re
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from django.core.management.base import CommandError
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser

from geometry.angulation import Angulation
from geometry.serializers import AngulationDocumentSerializer, CompactAngulationSerializer
from quivers.quiver import ColouredQuiver
from quivers.serializers import QuiverDocumentSerializer

logger = logging.getLogger(__name__)

RANGE_PATTERN = re.compile(r'^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$')


def parse_range(text: str, name: str) -> range:
    """``"2..20"`` or ``"3"`` as an inclusive range."""
    match = RANGE_PATTERN.match(text)
    if not match:
        raise CommandError(f"--{name} expects a value like 2..20, got {text!r}", returncode=1)
    low = int(match.group(1))
    high = int(match.group(2) or low)
    if low < 1 or high < low:
        raise CommandError(f"--{name} range {text!r} is empty or not positive", returncode=1)
    return range(low, high + 1)


PAIR_PATTERN = re.compile(r'^(\d+),(\d+)$')


def parse_pairs(values: Iterable[str], name: str) -> Tuple[Tuple[int, int], ...]:
    """``["7,1 7,2"]`` or ``["7,1", "7,2"]`` as ``((7, 1), (7, 2))``."""
    pairs = []
    for value in values:
        for item in str(value).replace(';', ' ').split():
            match = PAIR_PATTERN.match(item)
            if not match:
                raise CommandError(f"--{name} expects n,m pairs like 7,1, got {item!r}", returncode=1)
            n, m = int(match.group(1)), int(match.group(2))
            if n < 1 or m < 1:
                raise CommandError(f"--{name} pair {item!r} must be positive", returncode=1)
            pairs.append((n, m))
    return tuple(pairs)


def parse_vertices(values: Iterable[str]) -> List[int]:
    """Flatten ``["2", "0,1"]`` into ``[2, 0, 1]``."""
    vertices = []
    for value in values:
        for item in str(value).split(','):
            item = item.strip()
            if not item.isdigit():
                raise CommandError(f"--at expects 0-based vertex indices, got {item!r}", returncode=1)
            vertices.append(int(item))
    return vertices


def read_source(source: str, stdin=None) -> bytes:
    if source == '-':
        stream = stdin or sys.stdin
        data = stream.read()
        return data.encode('utf-8') if isinstance(data, str) else data
    try:
        return Path(source).read_bytes()
    except OSError as exc:
        raise CommandError(f"Cannot read {source}: {exc}", returncode=1)


def parse_json(raw: bytes, source: str):
    try:
        return JSONParser().parse(io.BytesIO(raw))
    except ParseError as exc:
        raise CommandError(f"{source}: {exc.detail}", returncode=1)


def _errors(serializer) -> str:
    parts = []
    for field, messages in serializer.errors.items():
        if isinstance(messages, dict):
            messages = [f"{key}: {value}" for key, value in messages.items()]
        parts.append(f"{field}: {'; '.join(str(m) for m in messages)}")
    return ' | '.join(parts)


def load_quiver(source: str, stdin=None) -> ColouredQuiver:
    data = parse_json(read_source(source, stdin), source)
    serializer = QuiverDocumentSerializer(data=data)
    if not serializer.is_valid():
        raise CommandError(f"Invalid quiver document {source}: {_errors(serializer)}", returncode=1)
    return serializer.save()


def load_angulation(source: str, m: Optional[int] = None, stdin=None) -> Angulation:
    """A JSON document from a path or ``-``, otherwise the compact ``i-j,...`` form."""
    if source == '-' or Path(source).is_file():
        data = parse_json(read_source(source, stdin), source)
        serializer = AngulationDocumentSerializer(data=data)
    else:
        if m is None:
            raise CommandError("The compact angulation form needs -m", returncode=1)
        serializer = CompactAngulationSerializer(data={'m': m, 'diagonals': source})
    if not serializer.is_valid():
        raise CommandError(f"Invalid angulation {source}: {_errors(serializer)}", returncode=1)
    angulation = serializer.save()
    logger.debug(f"Loaded {angulation!r} from {source}")
    return angulation
