"""The shell itself

    python shell.py analyze2 4 3 -2 -3 --json

Each invocation runs exactly one command; there is no interactive loop.
"""
import dataclasses
import logging
import os
import sys
from fractions import Fraction

import colorama

from base import ArgumentParser, ExactCmd, rational_arg, with_argparser
from core import AXES, DegenerateError, gram2, matrix, rational_sqrt
from analyzer2d import (VARIANTS, SolutionKind, existence_condition,
                        family_matrix, family_solutions, integer_lines2,
                        solve_lines2)
from analyzer3d import (ConeKind, classify_cone, default_pivot, existence3,
                        integer_line_search3, pivot_reduce, plane_integer_basis)
from diophantine import (IntBinaryForm, SquareRepInstance, lift_to_lines,
                         odd_argument_obstruction, piezas_family,
                         square_rep_bruteforce, two_adic_obstruction)
from render import (DEFAULT_HALF_WIDTH, DEFAULT_SEGMENTS, render_scene2,
                    render_scene3)
from report import Report, direction_record, matrix_report, quad_record
from torus import (QuadIntElement, autom_family, determinant, eigen_frame,
                   matrix_power, solution_lines_for_autom,
                   square_free_decomposition, stable_iterate, unstable_iterate)
from util import configure_logging, parse_matrix

DEFAULT_BOUND = 50

logger = logging.getLogger(__name__)

common = ArgumentParser(add_help=False)
common.add_argument('--json', action='store_true',
                    help='print the report as canonical JSON')
common.add_argument('-v', '--verbose', action='store_true',
                    help='log debugging details to stderr')


def axis(name: str) -> int:
    return AXES.index(name)


def irrational_record(A, line) -> dict:
    """Check Phi(beta, alpha +- sqrt(s)) = 0 in exact quadratic arithmetic"""
    alpha, beta, s = line.irrational_slope
    f, D = square_free_decomposition(s)
    y = QuadIntElement(Fraction(alpha), Fraction(f * line.branch), D)
    g = gram2(A)
    value = (g.m - 1) * beta * beta + 2 * g.p * beta * y + (g.n - 1) * (y * y)
    return {'rational': False, 'slope': [alpha, beta, s], 'branch': line.branch,
            'text': str(line),
            'verified': value.rational == 0 and value.radical == 0}


def reduction_record(red) -> dict:
    form = IntBinaryForm.from_binary_form(red.discriminant_form)
    return {'pivot': AXES[red.pivot],
            'linear': list(red.linear),
            'denominator': red.denominator,
            'multiplier': red.multiplier,
            'discriminant_form': list(form.coefficients),
            'two_adic_obstruction': two_adic_obstruction(form),
            'odd_argument_obstruction': odd_argument_obstruction(form),
            'text': str(red)}


class NormShell(ExactCmd):

    prompt = 'normlines> '

    def emit(self, report: Report, args):
        self.poutput(report.to_json() if args.json else report.to_text())
        logger.info('%s finished', report.command)

    def lines2_report(self, command, A, **data) -> Report:
        solution = solve_lines2(A)
        lines = []
        for line in solution.lines:
            if line.rational:
                lines.append(direction_record(A, line.direction, rational=True,
                                              eigenline=line.eigenline))
            else:
                lines.append(irrational_record(A, line))
        disc = solution.discriminant
        data.setdefault('k', None if disc is None else rational_sqrt(disc))
        data['discriminant'] = disc
        g = gram2(A)
        data['gram'] = {'m': g.m, 'n': g.n, 'p': g.p}
        if solution.kind is SolutionKind.ALL_LINES:
            logger.warning('%s is orthogonal; every line is norm-preserving', A)
        return matrix_report(command, A, existence=existence_condition(A),
                             classification=solution.kind.value, lines=lines,
                             data=data)

    analyze2_parser = ArgumentParser(parents=[common])
    analyze2_parser.add_argument('entries', nargs=4, type=rational_arg,
                                 help='a b c d of [[a, b], [c, d]]')

    @with_argparser(analyze2_parser)
    def do_analyze2(self, args):
        """Norm-preserving lines of a 2x2 rational matrix"""
        A = parse_matrix(args.entries, 2)
        self.emit(self.lines2_report('analyze2', A), args)

    analyze3_parser = ArgumentParser(parents=[common])
    analyze3_parser.add_argument('entries', nargs=9, type=rational_arg,
                                 help='the matrix, row by row')
    analyze3_parser.add_argument('--bound', type=int, default=DEFAULT_BOUND,
                                 help='largest |coordinate| searched')
    analyze3_parser.add_argument('--pivot', choices=AXES,
                                 help='coordinate to solve the cone for')

    @with_argparser(analyze3_parser)
    def do_analyze3(self, args):
        """Solution cone, pivot reduction and integer lines of a 3x3 matrix"""
        A = parse_matrix(args.entries, 3)
        c = classify_cone(A)
        data = {'rank': c.rank, 'normals': list(c.normals), 'line': c.line,
                'bound': args.bound}
        if c.kind is ConeKind.DOUBLE_PLANE:
            data['plane_basis'] = list(plane_integer_basis(c))

        pivot = axis(args.pivot) if args.pivot else default_pivot(A)
        if pivot is None:
            logger.warning('no coordinate appears squared in the cone of %s', A)
            reductions = {'pivot': None,
                          'note': 'every pivot is degenerate; the cone is '
                                  'linear in x'}
        else:
            reductions = reduction_record(pivot_reduce(A, pivot))

        if c.kind is ConeKind.ALL_SPACE:
            logger.warning('%s is orthogonal; every line is norm-preserving', A)
            found = []
        else:
            found = integer_line_search3(A, args.bound)
        lines = [direction_record(A, d) for d in found]
        self.emit(matrix_report('analyze3', A, existence=existence3(A),
                                classification=c.kind.value, lines=lines,
                                reductions=reductions, data=data), args)

    family_parser = ArgumentParser(parents=[common])
    family_parser.add_argument('variant', choices=sorted(VARIANTS),
                               help='signs of b - a and d - c; lopez is mm')
    family_parser.add_argument('a', type=int)
    family_parser.add_argument('c', type=int)
    family_parser.add_argument('--transpose', action='store_true')

    @with_argparser(family_parser)
    def do_family(self, args):
        """Lines of [[a, a +- 1], [c, c +- 1]]"""
        variant = dataclasses.replace(VARIANTS[args.variant],
                                      transpose=args.transpose)
        A = family_matrix(variant, args.a, args.c)
        data = {'variant': variant.name, 'a': args.a, 'c': args.c,
                'transpose': args.transpose}
        if variant.name == 'mm' and not variant.transpose:
            v1, v2, k = family_solutions(args.a, args.c)
            data['k'] = Fraction(k)
            data['closed_form'] = sorted({v1.coordinates, v2.coordinates})
        self.emit(self.lines2_report('family', A, **data), args)

    dioph_parser = ArgumentParser(parents=[common])
    dioph_parser.add_argument('form', nargs=3, type=int, metavar='COEFF',
                              help='a b c of a*y^2 + b*yz + c*z^2')
    dioph_parser.add_argument('--d', type=int, default=1,
                              help='right-hand side d*u^2')
    dioph_parser.add_argument('--bound', type=int, default=DEFAULT_BOUND)

    @with_argparser(dioph_parser)
    def do_dioph(self, args):
        """Certificates and small solutions of a*y^2 + b*yz + c*z^2 = d*u^2"""
        form = IntBinaryForm(*args.form)
        inst = SquareRepInstance(form, args.d)
        square = args.d == 1
        data = {'bound': args.bound,
                'two_adic_obstruction': two_adic_obstruction(form) if square else None,
                'odd_argument_obstruction': odd_argument_obstruction(form) if square else None,
                'solutions': [list(s) for s in square_rep_bruteforce(inst, args.bound)]}
        self.emit(Report('dioph', reductions={'form': list(args.form), 'd': args.d},
                         data=data), args)

    piezas_parser = ArgumentParser(parents=[common])
    piezas_parser.add_argument('form', nargs=3, type=int, metavar='COEFF')
    piezas_parser.add_argument('--seed', nargs=3, type=int, required=True,
                               metavar=('M', 'N', 'P'))
    piezas_parser.add_argument('--d', type=int, default=1)
    piezas_parser.add_argument('--st', nargs=2, type=int, action='append',
                               metavar=('S', 'T'),
                               help='family parameters; may be repeated')
    piezas_parser.add_argument('--matrix', nargs=9, type=rational_arg,
                               help='lift the solutions to lines of this matrix')
    piezas_parser.add_argument('--pivot', choices=AXES)

    @with_argparser(piezas_parser)
    def do_piezas(self, args):
        """Two-parameter family of solutions grown from a seed solution"""
        inst = SquareRepInstance(IntBinaryForm(*args.form), args.d)
        family = piezas_family(inst, tuple(args.seed))
        params = args.st or [[1, 1]]
        values = []
        for s, t in params:
            y, z, u = family(s, t)
            values.append({'s': s, 't': t, 'solution': [y, z, u],
                           'holds': inst.holds(y, z, u)})
        data = {'form': list(args.form), 'd': args.d, 'seed': list(args.seed),
                'polynomials': [list(p) for p in family.polynomials()],
                'values': values}
        if args.matrix is None:
            self.emit(Report('piezas', data=data), args)
            return

        if args.d != 1:
            raise DegenerateError('lifting to lines needs d = 1')
        A = parse_matrix(args.matrix, 3)
        pivot = axis(args.pivot) if args.pivot else default_pivot(A)
        if pivot is None:
            raise DegenerateError('no coordinate of {} can serve as pivot'.format(A))
        red = pivot_reduce(A, pivot)
        lines, seen = [], set()
        for s, t in params:
            for d in lift_to_lines(A, red, family(s, t)):
                if d not in seen:
                    seen.add(d)
                    lines.append(direction_record(A, d, st=[s, t]))
        self.emit(matrix_report('piezas', A, existence=existence3(A),
                                classification=classify_cone(A).kind.value,
                                lines=lines, reductions=reduction_record(red),
                                data=data), args)

    torus_parser = ArgumentParser(parents=[common])
    torus_parser.add_argument('q', type=int)
    torus_parser.add_argument('n', type=int)

    @with_argparser(torus_parser)
    def do_torus(self, args):
        """Iterate [[q+1, q], [q, q-1]] along its eigendirections"""
        if args.n < 0:
            raise DegenerateError('n must be nonnegative')
        T = autom_family(args.q)
        A = matrix(T.rows)
        frame = eigen_frame(args.q)
        power = matrix_power(T, args.n)
        lines = [direction_record(A, d)
                 for d in solution_lines_for_autom(args.q)]
        data = {'q': args.q, 'n': args.n,
                'power': [list(row) for row in power],
                'determinant': determinant(power),
                'eigenvalues': [quad_record(frame.unstable), quad_record(frame.stable)],
                'v1': list(frame.v1), 'v2': list(frame.v2),
                'scale': quad_record(frame.scale),
                'unstable': [quad_record(x) for x in unstable_iterate(args.q, args.n)],
                'stable': [quad_record(x) for x in stable_iterate(args.q, args.n)]}
        self.emit(matrix_report('torus', A, existence=existence_condition(A),
                                classification=SolutionKind.LINES.value,
                                lines=lines, data=data), args)

    render_parser = ArgumentParser(parents=[common])
    render_parser.add_argument('dim', type=int, choices=(2, 3))
    render_parser.add_argument('entries', nargs='+', type=rational_arg)
    render_parser.add_argument('--out', required=True,
                               help='SVG file (2D) or OBJ file (3D)')
    render_parser.add_argument('--cone', action='store_true',
                               help='3D: draw the solution cone')
    render_parser.add_argument('--lines', action='store_true',
                               help='2D: draw the rational solution lines')
    render_parser.add_argument('--half-width', type=float,
                               default=DEFAULT_HALF_WIDTH)
    render_parser.add_argument('--segments', nargs=2, type=int,
                               default=list(DEFAULT_SEGMENTS),
                               metavar=('LON', 'LAT'))

    @with_argparser(render_parser)
    def do_render(self, args):
        """Write the circle/ellipse or sphere/ellipsoid picture of a matrix"""
        A = parse_matrix(args.entries, args.dim)
        outputs = {}
        if args.dim == 2:
            lines = integer_lines2(A) if args.lines else []
            outputs[args.out] = render_scene2(A, lines, args.half_width)
        else:
            obj_text, svg_text = render_scene3(A, args.cone, tuple(args.segments),
                                               args.half_width)
            outputs[args.out] = obj_text
            outputs[os.path.splitext(args.out)[0] + '.svg'] = svg_text
        for path, text in outputs.items():
            with open(path, 'w') as f:
                f.write(text)
            logger.debug('wrote %d bytes to %s', len(text), path)
        self.emit(matrix_report('render', A, data={'files': sorted(outputs)}),
                  args)


def run(argv, stdout=None) -> int:
    """Run one command and return its exit status"""
    return NormShell(stdout=stdout).run_command(argv)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    configure_logging(verbose='-v' in argv or '--verbose' in argv)
    colorama.init()
    if not argv:
        sys.stderr.write('usage: shell.py {analyze2,analyze3,family,dioph,'
                         'piezas,torus,render} ...\n')
        return 2
    return run(argv)


if __name__ == '__main__':
    sys.exit(main())
