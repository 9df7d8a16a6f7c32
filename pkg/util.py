"""Utility functions and constructs
"""
import json
import logging
import re
import sys
from fractions import Fraction
from typing import List, Sequence

from core import ParseError, PrimitiveDirection, RatMatrix, format_rational, matrix

LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'
DEFAULT_LOG_LEVEL = logging.WARNING
RATIONAL_TOKEN = re.compile(r'^[+-]?\d+(/\d+)?$')

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool = False):
    """Send log records to stderr; stdout only carries reports"""
    level = logging.DEBUG if verbose else DEFAULT_LOG_LEVEL
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT,
                        force=True)


def parse_rational(token: str) -> Fraction:
    """'4', '-3' or '3/5' to a Fraction; decimals are refused"""
    if not RATIONAL_TOKEN.match(token):
        raise ParseError('invalid rational {!r} (use integers or p/q)'
                         .format(token))
    num, _, den = token.partition('/')
    if den and int(den) == 0:
        raise ParseError('zero denominator in {!r}'.format(token))
    return Fraction(int(num), int(den) if den else 1)


def parse_matrix(tokens: Sequence[str], size: int) -> RatMatrix:
    if len(tokens) != size * size:
        raise ParseError('a {0}x{0} matrix needs {1} entries, got {2}'
                         .format(size, size * size, len(tokens)))
    entries = [t if isinstance(t, Fraction) else parse_rational(t)
               for t in tokens]
    return matrix([entries[i * size:(i + 1) * size] for i in range(size)])


def matrix_rows(A: RatMatrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in A.rows]


def exact(value):
    """Turn exact library values into JSON-ready data without floats"""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, PrimitiveDirection):
        return value.as_list()
    if isinstance(value, float):
        raise TypeError('refusing to serialize float {!r}'.format(value))
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    raise TypeError('cannot serialize {!r}'.format(value))


def canonical_json(data) -> str:
    return json.dumps(exact(data), sort_keys=True, indent=2)
