import sys
from pathlib import Path
from typing import Any, Optional

from django.conf import settings
from django.core.management.base import CommandError
from rest_framework.renderers import JSONRenderer

USAGE = 1
MISMATCH = 2


class CommandOutputMixin:
    """Mixin providing common output and error helpers for the commands."""

    stealth_options = ('stdin',)

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def error(message):
            # argparse would exit 2, which is reserved for mismatches
            if parser.called_from_command_line:
                parser.print_usage(sys.stderr)
                parser.exit(USAGE, f"{parser.prog}: error: {message}\n")
            raise CommandError(f"Error: {message}", returncode=USAGE)

        parser.error = error
        return parser

    @staticmethod
    def setting(name: str) -> Any:
        return settings.COLOURED_QUIVERS[name]

    @staticmethod
    def fail(message: str, returncode: int = USAGE):
        raise CommandError(message, returncode=returncode)

    def guard(self, size: int, setting_name: str, what: str) -> None:
        """Refuse work whose predicted size exceeds a configured limit."""
        limit = self.setting(setting_name)
        if size > limit:
            self.fail(f"{what} would visit {size} objects, above {setting_name}={limit}")

    @staticmethod
    def render_json(data: Any) -> str:
        return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')

    @staticmethod
    def render_json_line(data: Any) -> str:
        return JSONRenderer().render(data).decode('utf-8')

    def emit(self, text: str, output: Optional[str] = None) -> None:
        """Write to ``output`` when given, otherwise to stdout."""
        if output:
            try:
                Path(output).write_text(text + '\n', encoding='utf-8')
            except OSError as exc:
                self.fail(f"Cannot write {output}: {exc}")
        else:
            self.stdout.write(text)
