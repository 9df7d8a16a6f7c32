"""Static pictures of the unit circle/sphere, the ellipse/ellipsoid
||Av|| = 1 and the solution lines or cone

This is the only module that leaves exact arithmetic. Scenes are sampled
with numpy and written with a fixed number of decimals and a fixed element
order, so the same input always gives the same bytes.
"""
import json
import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core import DimensionError, PrimitiveDirection, RatMatrix, RatMatrix2, RatMatrix3
from analyzer3d import (ConeKind, classify_cone, cone_form, default_pivot,
                        other_axes, pivot_reduce, plane_integer_basis)
from util import exact, matrix_rows

logger = logging.getLogger(__name__)

SVG_PRECISION = 6
DEFAULT_HALF_WIDTH = 2.0
DEFAULT_SEGMENTS = (64, 32)
CANVAS_SIZE = 400
ELLIPSE_SAMPLES = 360
# quadratic values below this count as an unbounded direction
UNBOUNDED = 1e-12

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg
    width="%(size)d"
    height="%(size)d"
    viewBox="%(low)s %(low)s %(span)s %(span)s"
    version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<metadata id="normlines">%(metadata)s</metadata>
<g transform="scale(1,-1)" style="fill:none;stroke-width:%(stroke)s">
<rect x="%(low)s" y="%(low)s" width="%(span)s" height="%(span)s" style="fill:#ffffff;stroke:none"/>
"""

POSTAMBLE = """\
</g>
</svg>
"""

CIRCLE_COLOR = '#000000'
ELLIPSE_COLOR = '#1f77b4'
LINE_COLOR = '#d62728'
SPHERE_COLOR = '#999999'


def num(x: float) -> str:
    text = '%.*f' % (SVG_PRECISION, x)
    if float(text) == 0:
        # no "-0.000000"
        text = '%.*f' % (SVG_PRECISION, 0.0)
    return text


def as_float_matrix(A: RatMatrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in A.rows])


class SVG:
    """Element list written between a fixed preamble and postamble"""

    def __init__(self, half_width: float, metadata: dict):
        self.half_width = half_width
        self.metadata = metadata
        self.commands = []

    def circle(self, x, y, radius, stroke=CIRCLE_COLOR):
        self.commands.append(
            '<circle cx="%s" cy="%s" r="%s" style="stroke:%s"/>'
            % (num(x), num(y), num(radius), stroke))

    def line(self, p, q, color=LINE_COLOR):
        self.commands.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" style="stroke:%s"/>'
            % (num(p[0]), num(p[1]), num(q[0]), num(q[1]), color))

    def polyline(self, points, color=ELLIPSE_COLOR, closed=False):
        tag = 'polygon' if closed else 'polyline'
        self.commands.append(
            '<%s points="%s" style="stroke:%s"/>'
            % (tag, ' '.join('%s,%s' % (num(x), num(y)) for x, y in points),
               color))

    def render(self) -> str:
        low = -self.half_width
        span = 2 * self.half_width
        values = {
            'size': CANVAS_SIZE,
            'low': num(low),
            'span': num(span),
            'stroke': num(span / 200),
            'metadata': json.dumps(exact(self.metadata), sort_keys=True),
        }
        return PREAMBLE % values + ''.join(c + '\n' for c in self.commands) + POSTAMBLE


def read_metadata(svg_text: str) -> dict:
    match = re.search(r'<metadata id="normlines">(.*?)</metadata>', svg_text,
                      re.DOTALL)
    if match is None:
        raise ValueError('no metadata block')
    return json.loads(match.group(1))


def unit_circle(samples: int) -> np.ndarray:
    theta = np.arange(samples) * (2 * np.pi / samples)
    return np.stack([np.cos(theta), np.sin(theta)], axis=1)


def _radii(A: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """1/||Ad|| per unit direction d, inf where A (nearly) kills d"""
    quad = np.sum((directions @ A.T) ** 2, axis=1)
    radii = np.full(len(directions), np.inf)
    bounded = quad > UNBOUNDED
    radii[bounded] = 1 / np.sqrt(quad[bounded])
    return radii


def ellipse_points(A: RatMatrix2, samples: int = ELLIPSE_SAMPLES) -> np.ndarray:
    """Unrounded points of ||Ap|| = 1 along evenly spaced directions

    Directions in which the ellipse is unbounded are left out.
    """
    d = unit_circle(samples)
    r = _radii(as_float_matrix(A), d)
    keep = np.isfinite(r)
    return d[keep] * r[keep][:, None]


def _runs(inside: Sequence[bool]) -> Tuple[List[List[int]], bool]:
    """Maximal cyclic runs of True, and whether the whole cycle is one run"""
    n = len(inside)
    if all(inside):
        return [list(range(n))], True
    start = next(i for i in range(n) if not inside[i])
    runs, current = [], []
    for k in range(1, n + 1):
        i = (start + k) % n
        if inside[i]:
            current.append(i)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs, False


def _to_box(v: np.ndarray, half_width: float) -> np.ndarray:
    """Scale a direction so that it just reaches the viewport box"""
    return v * (half_width / np.max(np.abs(v)))


@dataclass(frozen=True)
class Scene2D:
    """Unit circle, the ellipse v . Bv = 1 and the given solution lines"""
    A: RatMatrix2
    lines: Tuple[PrimitiveDirection, ...] = ()
    half_width: float = DEFAULT_HALF_WIDTH

    def __post_init__(self):
        if any(len(line) != 2 for line in self.lines):
            raise DimensionError('2D scenes take 2D directions')

    @property
    def gram(self) -> RatMatrix2:
        return self.A.transpose() @ self.A

    def ellipse_runs(self, samples: int = ELLIPSE_SAMPLES):
        d = unit_circle(samples)
        r = _radii(as_float_matrix(self.A), d)
        points = d * np.where(np.isfinite(r), r, 0)[:, None]
        inside = [bool(np.isfinite(r[i]) and np.max(np.abs(points[i])) <= self.half_width)
                  for i in range(samples)]
        runs, closed = _runs(inside)
        return [points[run] for run in runs], closed

    def line_segments(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        segments = []
        for line in self.lines:
            end = _to_box(np.array(line.coordinates, dtype=float), self.half_width)
            segments.append((-end, end))
        return segments

    def metadata(self) -> dict:
        return {'kind': 'scene2', 'matrix': matrix_rows(self.A),
                'gram': matrix_rows(self.gram),
                'lines': [line.as_list() for line in self.lines],
                'half_width': num(self.half_width)}

    def svg(self) -> str:
        doc = SVG(self.half_width, self.metadata())
        doc.circle(0, 0, 1)
        runs, closed = self.ellipse_runs()
        for run in runs:
            doc.polyline(run, closed=closed)
        for p, q in self.line_segments():
            doc.line(p, q)
        return doc.render()


def render_scene2(A: RatMatrix2, lines: Sequence[PrimitiveDirection] = (),
                  half_width: float = DEFAULT_HALF_WIDTH) -> str:
    return Scene2D(A, tuple(lines), half_width).svg()


@dataclass
class Mesh:
    """Vertices with 0-based faces and line records"""
    name: str
    vertices: np.ndarray
    faces: List[Tuple[int, ...]] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)


def check_segments(segments: Tuple[int, int]) -> Tuple[int, int]:
    n_lon, n_lat = segments
    if n_lon < 3 or n_lat < 2:
        raise DimensionError('a sphere needs at least 3 longitude and 2 latitude '
                             'segments, got {}'.format(tuple(segments)))
    return n_lon, n_lat


def sphere_directions(segments: Tuple[int, int]) -> np.ndarray:
    """North pole, segments[1] - 1 rings of segments[0] points, south pole"""
    n_lon, n_lat = check_segments(segments)
    points = [(0.0, 0.0, 1.0)]
    for i in range(1, n_lat):
        phi = np.pi * i / n_lat
        for j in range(n_lon):
            theta = 2 * np.pi * j / n_lon
            points.append((np.sin(phi) * np.cos(theta),
                           np.sin(phi) * np.sin(theta), np.cos(phi)))
    points.append((0.0, 0.0, -1.0))
    return np.array(points)


def sphere_faces(segments: Tuple[int, int]) -> List[Tuple[int, ...]]:
    n_lon, n_lat = check_segments(segments)
    south = 1 + (n_lat - 1) * n_lon
    faces = [(0, 1 + j, 1 + (j + 1) % n_lon) for j in range(n_lon)]
    for i in range(n_lat - 2):
        base = 1 + i * n_lon
        for j in range(n_lon):
            k = (j + 1) % n_lon
            faces.append((base + j, base + n_lon + j, base + n_lon + k, base + k))
    last = 1 + (n_lat - 2) * n_lon
    faces.extend((south, last + (j + 1) % n_lon, last + j) for j in range(n_lon))
    return faces


def ellipsoid_points(A: RatMatrix3,
                     segments: Tuple[int, int] = DEFAULT_SEGMENTS) -> np.ndarray:
    """Unrounded points of ||Ap|| = 1 on the sphere's directions, bounded ones only"""
    d = sphere_directions(segments)
    r = _radii(as_float_matrix(A), d)
    keep = np.isfinite(r)
    return d[keep] * r[keep][:, None]


def uv_sphere(segments: Tuple[int, int]) -> Mesh:
    return Mesh('sphere', sphere_directions(segments), sphere_faces(segments))


def uv_ellipsoid(A: RatMatrix3, segments: Tuple[int, int], half_width: float) -> Mesh:
    """The ellipsoid, with unbounded directions cut off outside the box"""
    d = sphere_directions(segments)
    cap = half_width * np.sqrt(3)
    r = np.minimum(_radii(as_float_matrix(A), d), cap)
    return Mesh('ellipsoid', d * r[:, None], sphere_faces(segments))


def cone_rulings(A: RatMatrix3, samples: int) -> List[List[Optional[np.ndarray]]]:
    """Unit ruling directions of the cone, one list per branch

    Rulings are parametrized by the two non-pivot coordinates running
    around a circle; None marks samples where the branch is not real.
    """
    pivot = default_pivot(A)
    circle = unit_circle(samples)
    branches = []
    if pivot is not None:
        red = pivot_reduce(A, pivot)
        i, l = red.others
        a, b, c = (float(x) for x in red.discriminant_form.coefficients)
        lin = [float(x) for x in red.linear]
        den = float(red.denominator)
        for branch in (1, -1):
            rays = []
            for s, t in circle:
                D = a * s * s + b * s * t + c * t * t
                if D < -UNBOUNDED:
                    rays.append(None)
                    continue
                v = np.zeros(3)
                v[pivot] = lin[0] * s + lin[1] * t + branch * np.sqrt(max(D, 0.0)) / den
                v[i], v[l] = s, t
                rays.append(v / np.linalg.norm(v))
            branches.append(rays)
        return branches

    # no squared coordinate: the cone is linear in x
    S = as_float_matrix(cone_form(A).matrix)
    i, l = other_axes(0)
    rays = []
    for s, t in circle:
        slope = 2 * (S[0, i] * s + S[0, l] * t)
        rest = S[i, i] * s * s + 2 * S[i, l] * s * t + S[l, l] * t * t
        if abs(slope) < UNBOUNDED:
            rays.append(None)
            continue
        v = np.array([-rest / slope, 0.0, 0.0])
        v[i], v[l] = s, t
        rays.append(v / np.linalg.norm(v))
    return [rays]


def _ruled_cone(A: RatMatrix3, samples: int, half_width: float) -> Mesh:
    vertices = [np.zeros(3)]
    faces = []
    for rays in cone_rulings(A, samples):
        index = {}
        for k, ray in enumerate(rays):
            if ray is None:
                continue
            index[k] = len(vertices)
            end = _to_box(ray, half_width)
            vertices.extend([end, -end])
        for k in range(samples):
            m = (k + 1) % samples
            if k in index and m in index:
                faces.append((0, index[k], index[m]))
                faces.append((0, index[m] + 1, index[k] + 1))
    return Mesh('cone', np.array(vertices), faces)


def _disk(name: str, basis: np.ndarray, samples: int, half_width: float) -> Mesh:
    ring = unit_circle(samples) @ basis
    vertices = np.vstack([np.zeros(3), half_width * ring])
    faces = [(0, 1 + j, 1 + (j + 1) % samples) for j in range(samples)]
    return Mesh(name, vertices, faces)


def orthonormal_plane(normal: Sequence[int]) -> np.ndarray:
    """Two orthonormal rows spanning the plane with the given normal"""
    _, _, vt = np.linalg.svd(np.array([normal], dtype=float))
    return vt[1:]


def cone_mesh(A: RatMatrix3, segments: Tuple[int, int],
              half_width: float) -> Tuple[List[Mesh], List[PrimitiveDirection]]:
    """Surface of the solution set and the rational lines it is built from"""
    c = classify_cone(A)
    samples = segments[0]
    if c.kind is ConeKind.DOUBLE_PLANE:
        basis = plane_integer_basis(c)
        q, _ = np.linalg.qr(np.array([b.coordinates for b in basis], dtype=float).T)
        return [_disk('plane', q.T, samples, half_width)], list(basis)
    if c.kind is ConeKind.PLANE_PAIR:
        meshes = [_disk('plane_%d' % k, orthonormal_plane(n.coordinates), samples,
                        half_width)
                  for k, n in enumerate(c.normals)]
        return meshes, [c.line]
    if c.kind is ConeKind.SINGLE_LINE:
        end = _to_box(np.array(c.line.coordinates, dtype=float), half_width)
        return [Mesh('line', np.array([-end, end]), edges=[(0, 1)])], [c.line]
    if c.kind in (ConeKind.IRREDUCIBLE_CONE, ConeKind.IRRATIONAL_PLANE_PAIR):
        lines = [c.line] if c.line is not None else []
        return [_ruled_cone(A, samples * 4, half_width)], lines
    logger.debug('nothing to draw for a %s cone', c.kind.value)
    return [], []


def to_obj(meshes: Sequence[Mesh], header: Sequence[str]) -> str:
    out = ['# ' + h for h in header]
    offset = 1
    for mesh in meshes:
        out.append('o ' + mesh.name)
        out.extend('v ' + ' '.join(num(x) for x in v) for v in mesh.vertices)
        out.extend('f ' + ' '.join(str(offset + i) for i in face)
                   for face in mesh.faces)
        out.extend('l %d %d' % (offset + i, offset + j) for i, j in mesh.edges)
        offset += len(mesh.vertices)
    return '\n'.join(out) + '\n'


def view_matrix(azimuth: float = 30.0, elevation: float = 20.0) -> np.ndarray:
    """Rotation whose first two rows are the screen axes"""
    az, el = np.radians(azimuth), np.radians(elevation)
    spin = np.array([[np.cos(az), np.sin(az), 0.0],
                     [-np.sin(az), np.cos(az), 0.0],
                     [0.0, 0.0, 1.0]])
    tilt = np.array([[1.0, 0.0, 0.0],
                     [0.0, np.sin(el), np.cos(el)],
                     [0.0, -np.cos(el), np.sin(el)]])
    return tilt @ spin


def _wire(doc: SVG, mesh: Mesh, segments: Tuple[int, int], view: np.ndarray,
          color: str):
    n_lon, n_lat = segments
    flat = mesh.vertices @ view.T[:, :2]
    for i in range(0, n_lat - 1, 4):
        doc.polyline(flat[1 + i * n_lon:1 + (i + 1) * n_lon], color, closed=True)
    for j in range(0, n_lon, 8):
        idx = [0] + [1 + i * n_lon + j for i in range(n_lat - 1)] + [len(flat) - 1]
        doc.polyline(flat[idx], color)


def render_scene3(A: RatMatrix3, include_cone: bool,
                  segments: Tuple[int, int] = DEFAULT_SEGMENTS,
                  half_width: float = DEFAULT_HALF_WIDTH) -> Tuple[str, str]:
    """OBJ text of sphere, ellipsoid and (optionally) cone, plus an SVG view

    Args:
        A: the 3x3 matrix
        include_cone: add the solution set of ||Av|| = ||v||
        segments: (longitude, latitude) subdivisions of the sphere meshes
        half_width: half the side of the box the cone is cut to
    """
    if not isinstance(A, RatMatrix3):
        raise DimensionError('3D scenes need a 3x3 matrix')
    kind = classify_cone(A).kind
    meshes = [uv_sphere(segments), uv_ellipsoid(A, segments, half_width)]
    lines = []
    if include_cone:
        extra, lines = cone_mesh(A, segments, half_width)
        meshes.extend(extra)

    metadata = {'kind': 'scene3', 'matrix': matrix_rows(A),
                'classification': kind.value, 'include_cone': include_cone,
                'segments': list(segments), 'half_width': num(half_width),
                'lines': [line.as_list() for line in lines]}
    header = ['normlines scene', 'matrix ' + str(A),
              'classification ' + kind.value,
              'metadata ' + json.dumps(exact(metadata), sort_keys=True)]
    obj_text = to_obj(meshes, header)

    view = view_matrix()
    doc = SVG(half_width * 1.75, metadata)
    _wire(doc, meshes[0], segments, view, SPHERE_COLOR)
    _wire(doc, meshes[1], segments, view, ELLIPSE_COLOR)
    for mesh in meshes[2:]:
        flat = mesh.vertices @ view.T[:, :2]
        if mesh.edges:
            for i, j in mesh.edges:
                doc.line(flat[i], flat[j])
        elif mesh.name == 'cone':
            for k in range(1, len(flat), 16):
                doc.line(flat[k], flat[k + 1])
        else:
            doc.polyline(flat[1:], LINE_COLOR, closed=True)
    return obj_text, doc.render()
