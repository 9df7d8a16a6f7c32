"""The report every shell command produces

A Report is plain data: strings for rationals, integer lists for
directions, nested dicts for everything command-specific. It prints as
indented text or as canonical JSON, and reads back from that JSON.
"""
import logging
from dataclasses import dataclass, field, fields
from typing import List, Optional

from core import DegenerateError, PrimitiveDirection, RatMatrix, verify_norm_preserving
from torus import QuadIntElement
from util import canonical_json, exact, matrix_rows

logger = logging.getLogger(__name__)


@dataclass
class Report:
    command: str
    matrix: List[List[str]] = field(default_factory=list)
    existence: Optional[bool] = None
    classification: Optional[str] = None
    lines: List[dict] = field(default_factory=list)
    reductions: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        failed = [line for line in self.lines if not line.get('verified')]
        if failed:
            raise DegenerateError('unverified lines in {} report: {}'
                                  .format(self.command, failed))

    def as_dict(self) -> dict:
        return {f.name: exact(getattr(self, f.name)) for f in fields(self)}

    def to_json(self) -> str:
        return canonical_json(self.as_dict())

    @classmethod
    def from_dict(cls, data: dict) -> 'Report':
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    def to_text(self) -> str:
        out = [self.command]
        if self.matrix:
            out.append('matrix: [' + ', '.join(
                '[' + ', '.join(row) + ']' for row in self.matrix) + ']')
        if self.existence is not None:
            out.append('existence: {}'.format(_scalar_text(self.existence)))
        if self.classification is not None:
            out.append('classification: {}'.format(self.classification))
        if self.lines or self.classification is not None:
            out.append('lines: {}'.format(len(self.lines)))
            out.extend('  ' + _line_text(line) for line in self.lines)
        for title in ('reductions', 'data'):
            section = getattr(self, title)
            if section:
                out.append(title + ':')
                out.extend(_dict_text(exact(section), 1))
        return '\n'.join(out)


def _scalar_text(value) -> str:
    if value is None:
        return '-'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return str(value)


def _line_text(line: dict) -> str:
    if 'direction' in line:
        head = '<' + ', '.join(str(x) for x in line['direction']) + '>'
    else:
        head = line.get('text', '?')
    flags = [k + '=' + _scalar_text(v) for k, v in sorted(line.items())
             if k not in ('direction', 'text')]
    return '  '.join([head] + flags)


def _dict_text(section: dict, depth: int) -> List[str]:
    pad = '  ' * depth
    out = []
    for key in sorted(section):
        value = section[key]
        if isinstance(value, dict):
            if 'text' in value and 'radicand' in value:
                out.append('{}{}: {}'.format(pad, key, value['text']))
                continue
            out.append('{}{}:'.format(pad, key))
            out.extend(_dict_text(value, depth + 1))
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            out.append('{}{}:'.format(pad, key))
            for item in value:
                if isinstance(item, dict) and 'text' in item:
                    out.append('{}  {}'.format(pad, item['text']))
                else:
                    out.append('{}  {}'.format(pad, _compact(item)))
        else:
            out.append('{}{}: {}'.format(pad, key, _compact(value)))
    return out


def _compact(value) -> str:
    if isinstance(value, list):
        return '[' + ', '.join(_compact(v) for v in value) + ']'
    if isinstance(value, dict):
        return '{' + ', '.join('{}: {}'.format(k, _compact(value[k]))
                               for k in sorted(value)) + '}'
    return _scalar_text(value)


def direction_record(A: RatMatrix, direction: PrimitiveDirection, **extra) -> dict:
    record = {'direction': direction.as_list(),
              'verified': verify_norm_preserving(A, direction)}
    record.update(extra)
    return record


def quad_record(q: QuadIntElement) -> dict:
    return {'rational': q.rational, 'radical': q.radical,
            'radicand': q.radicand, 'text': str(q)}


def matrix_report(command: str, A: RatMatrix, **kwargs) -> Report:
    return Report(command, matrix=matrix_rows(A), **kwargs)
