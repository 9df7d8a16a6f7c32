import argparse
import functools
import logging
import re
import shlex
import sys

import colorama
from cmd2 import Cmd

from core import NormLineError, ParseError
from util import parse_rational

COMMAND_FUNC_PREFIX = 'do_'
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
NEGATIVE_NUMBER = re.compile(r'^-\d+(/\d+)?$')

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that reads -3/5 as a value instead of an option"""

    def __init__(self, *args, **kwargs):
        super(ArgumentParser, self).__init__(*args, **kwargs)
        self._negative_number_matcher = NEGATIVE_NUMBER


def rational_arg(token: str):
    try:
        return parse_rational(token)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e))


def with_argparser(argparser: argparse.ArgumentParser):
    """Decorater for cmd commands

    Split the command string like a shell and feed it to our argparser.
    The result goes to the wrapped function. Usage errors and library
    errors are reported and leave their code in `exit_status`.

    Args:
        argparser : The argparser to use. Usually a class variable

    """

    def arg_decorator(func):
        @functools.wraps(func)
        def cmd_wrapper(instance, cmdline, **kwargs):
            try:
                args = argparser.parse_args(shlex.split(cmdline))
            except SystemExit as e:
                instance.exit_status = EXIT_USAGE if e.code else EXIT_OK
                return
            # anything escaping to cmd2 must still count as a failure
            instance.exit_status = EXIT_ERROR
            try:
                result = func(instance, args, **kwargs)
            except (NormLineError, OSError) as e:
                logger.debug('%s failed', argparser.prog, exc_info=True)
                instance.perror('{}: {}'.format(argparser.prog, e))
                return
            instance.exit_status = EXIT_OK
            return result

        argparser.prog = func.__name__[len(COMMAND_FUNC_PREFIX):]
        if argparser.description is None and func.__doc__:
            argparser.description = func.__doc__

        cmd_wrapper.__doc__ = argparser.description

        setattr(cmd_wrapper, 'argparser', argparser)

        return cmd_wrapper

    return arg_decorator


class ExactCmd(Cmd):
    """Base cmd class for the norm-line shell

    Runs one command at a time, writes errors in red to stderr and keeps
    the exit status of the last command.
    """

    def __init__(self, stdout=None):
        super(ExactCmd, self).__init__(stdout=stdout, allow_cli_args=False,
                                       allow_redirection=False)
        self.exit_status = EXIT_OK

    def perror(self, msg='', *, end='\n', **kwargs):
        sys.stderr.write(colorama.Fore.RED + str(msg) +
                         colorama.Style.RESET_ALL + end)

    def default(self, statement):
        self.perror('unknown command: {}'.format(statement.command))
        self.exit_status = EXIT_USAGE

    def run_command(self, argv) -> int:
        """Run a single command given as an argument vector"""
        self.exit_status = EXIT_OK
        self.onecmd_plus_hooks(' '.join(shlex.quote(a) for a in argv))
        return self.exit_status
