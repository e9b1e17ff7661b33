"""
Command-line entry point: entropic <subcommand> [options].

Exit codes: 0 success, 2 partial success (some grid cells skipped),
1 fatal error, 64 usage error.
"""

import os
import sys

import django
from django.core.management import load_command_class
from django.core.management.base import CommandError

from core.utils import attach_negative_values

PROG = "entropic"
SUBCOMMANDS = ("sweep", "weights", "roc", "scores", "synth", "saturate")
EXIT_USAGE = 64


def synopsis():
    return (
        f"usage: {PROG} {{{','.join(SUBCOMMANDS)}}} [options]\n"
        f"Run '{PROG} <subcommand> --help' for the options of a subcommand; "
        "output files are described in FORMATS.md.\n"
    )


def run(argv=None, stdout=None, stderr=None):
    """Parse argv, run the subcommand and return its exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = attach_negative_values(sys.argv[1:] if argv is None else argv)
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.development")
    django.setup()

    if not argv or argv[0] in ("-h", "--help", "help"):
        (stdout if argv else stderr).write(synopsis())
        return 0 if argv else EXIT_USAGE
    subcommand, arguments = argv[0], argv[1:]
    if subcommand not in SUBCOMMANDS:
        stderr.write(f"Unknown subcommand {subcommand!r}\n{synopsis()}")
        return EXIT_USAGE

    command = load_command_class("core", subcommand)
    parser = command.create_parser(PROG, subcommand)
    try:
        options = vars(parser.parse_args(arguments))
    except CommandError as exc:
        stderr.write(f"{parser.format_usage()}{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code or 0
    args = options.pop("args", ())

    try:
        command.execute(*args, stdout=stdout, stderr=stderr, **options)
    except CommandError as exc:
        if exc.returncode == EXIT_USAGE:
            stderr.write(parser.format_usage())
        stderr.write(f"Error: {exc}\n")
        return exc.returncode
    return command.exit_code
