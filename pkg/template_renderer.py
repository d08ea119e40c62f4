#!/usr/bin/env python3
"""
Template Renderer for the perforated surfaces toolkit

This module renders the human-readable summaries of command reports.
"""

import os
from typing import Any, Dict, Optional

from jinja2 import ChoiceLoader, DictLoader, Environment, FileSystemLoader, TemplateNotFound

SUMMARY_SUFFIX = ".txt.j2"


class TemplateRenderer:
    """Renders report summaries from Jinja2 templates"""

    def __init__(self, template_dir: Optional[str] = None) -> None:
        """
        Set up the summary environment

        Args:
            template_dir: Directory of summary templates, `templates/` beside this file by default
        """
        self.template_dir: str = template_dir or os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                                              "templates")
        # registered templates shadow the bundled ones
        self.registered: Dict[str, str] = {}
        self.env: Environment = Environment(
            loader=ChoiceLoader([DictLoader(self.registered), FileSystemLoader(self.template_dir)]),
            trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)

    def render_template(self, template_name: str, context: Dict[str, Any]) -> str:
        return self.env.get_template(template_name).render(**context)

    def render_summary(self, command: str, report: Dict[str, Any]) -> str:
        """Summary of a command report; commands without a template get a one-line fallback"""
        try:
            return self.render_template(command + SUMMARY_SUFFIX, {"report": report, "command": command})
        except TemplateNotFound:
            return f"{command}: done\n"

    def register_template(self, name: str, path: str) -> None:
        """Serve the template file at path under name"""
        with open(path, encoding="utf-8") as f:
            self.registered[name] = f.read()
