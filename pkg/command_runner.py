#!/usr/bin/env python3
"""
Command Runner for the perforated surfaces toolkit

This module validates a command, dispatches it to the owning module and
turns the result into a JSON-ready report with an exit status.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from config_manager import ConfigurationManager
from covering import cover_report, group_catalog, hawaiian_obstruction
from endspace import canonicalize, fingerprint, rank
from errors import ToolkitError, UsageError
from expression_parser import parse_expr
from fractal import FractalFactory, retraction_sweep, rho, witness_loops
from fs_manager import FileSystemManager
from nonhopf import kernel_witness, lift_loop, lift_suite
from surface import (
    SurfaceDescriptor, euler_characteristic, family_report, family_subsets, generate_ep_family,
    normalize_perforation, perforation_eq, preset,
)

log = logging.getLogger('perforate.command_runner')

FRACTAL_OPS = ("member", "retract", "rho", "witness", "sweep")


@dataclass
class Command:
    """One toolkit command with its arguments"""
    name: str
    args: Dict[str, Any] = field(default_factory=dict)

    def arg(self, key: str, default: Any = None) -> Any:
        value = self.args.get(key)
        return default if value is None else value

    def require(self, key: str) -> Any:
        value = self.args.get(key)
        if value is None:
            raise UsageError(f"{self.name} needs --{key.replace('_', '-')}")
        return value


class CommandRunner:
    """Dispatches commands to the toolkit modules"""

    def __init__(self, config_manager: Optional[ConfigurationManager] = None,
                 fs_manager: Optional[FileSystemManager] = None) -> None:
        """Initialize with optional components (for dependency injection)"""
        self.config_manager: ConfigurationManager = config_manager or ConfigurationManager()
        self.fs_manager: FileSystemManager = fs_manager or FileSystemManager()
        self.handlers: Dict[str, Callable[[Command], Dict[str, Any]]] = {
            "classify": self.classify,
            "compare": self.compare,
            "family": self.family,
            "rank": self.rank,
            "lift": self.lift,
            "fractal": self.fractal,
            "cover": self.cover,
            "obstruction": self.obstruction,
        }

    def setting(self, section: str, key: str) -> Any:
        return self.config_manager.get(section, key)

    def run(self, cmd: Command) -> Tuple[Dict[str, Any], int]:
        """Report and exit status: 0 on success, 1 on a domain error, 2 on a usage error"""
        handler = self.handlers.get(cmd.name)
        try:
            if handler is None:
                raise UsageError(f"Unsupported command: {cmd.name}")
            report = handler(cmd)
        except UsageError as e:
            return self._error(cmd, e), 2
        except ToolkitError as e:
            return self._error(cmd, e), 1
        report = {"command": cmd.name, "input": self._echo(cmd), **report}
        log.debug("%s finished", cmd.name)
        return report, 0

    def _error(self, cmd: Command, error: ToolkitError) -> Dict[str, Any]:
        log.debug("%s failed: %r", cmd.name, error)
        return {"command": cmd.name, "input": self._echo(cmd), "error": str(error),
                "errorType": type(error).__name__}

    def _echo(self, cmd: Command) -> Dict[str, Any]:
        return {key: value for key, value in sorted(cmd.args.items()) if value is not None}

    # -- surfaces -----------------------------------------------------------

    def _descriptor(self, cmd: Command, key: str) -> SurfaceDescriptor:
        source = cmd.require(key)
        if source.startswith("preset:"):
            return preset(source[len("preset:"):])
        return self.fs_manager.load_descriptor(source)

    def _passes(self) -> int:
        return self.setting("endspace", "max_rewrite_passes")

    def classify(self, cmd: Command) -> Dict[str, Any]:
        if cmd.arg("preset"):
            descriptor = preset(cmd.args["preset"])
        else:
            descriptor = self._descriptor(cmd, "descriptor")
        result = normalize_perforation(descriptor, self._passes())
        report = {"descriptor": descriptor.to_dict(), "class": result.to_dict()}
        if descriptor.ends.is_empty():
            report["eulerCharacteristic"] = euler_characteristic(descriptor)
        return report

    def compare(self, cmd: Command) -> Dict[str, Any]:
        first, second = self._descriptor(cmd, "first"), self._descriptor(cmd, "second")
        verdict = perforation_eq(first, second, self._passes())
        return {
            "verdict": verdict.value,
            "classes": [normalize_perforation(d, self._passes()).to_dict() for d in (first, second)],
        }

    def family(self, cmd: Command) -> Dict[str, Any]:
        m = cmd.require("m")
        mode = cmd.arg("mode", "check")
        max_m = self.setting("family", "max_m")
        if not isinstance(m, int) or not 1 <= m <= max_m:
            raise UsageError(f"m must be between 1 and {max_m}, got {m!r}")
        if mode == "emit":
            return {"m": m, "descriptors": [{"ranks": j, "descriptor": generate_ep_family(m, j).to_dict()}
                                            for j in family_subsets(m)]}
        if mode == "check":
            return {"m": m, **family_report(m, self._passes())}
        raise UsageError(f"family mode must be emit or check, got {mode!r}")

    def rank(self, cmd: Command) -> Dict[str, Any]:
        e = parse_expr(cmd.require("expr"))
        result = rank(e)
        return {
            "rank": str(result.rank),
            "kernel": "empty" if result.kernel.is_empty() else str(result.kernel),
            "canonical": str(canonicalize(e, self._passes())),
            "fingerprint": fingerprint(e).to_dict(),
        }

    # -- geometry -----------------------------------------------------------

    def lift(self, cmd: Command) -> Dict[str, Any]:
        denominator = cmd.arg("denominator", self.setting("planegeom", "profile_denominator"))
        if not isinstance(denominator, int) or denominator < 1:
            raise UsageError(f"denominator must be a positive integer, got {denominator!r}")
        if cmd.arg("witness"):
            return {"witness": kernel_witness().to_dict(denominator)}
        if cmd.arg("suite"):
            return {"suite": lift_suite(
                count=cmd.arg("count", self.setting("nonhopf", "suite_size")),
                denominator=denominator,
                seed=cmd.arg("seed", self.setting("nonhopf", "seed")),
                box=self.setting("nonhopf", "box"),
                max_vertices=self.setting("nonhopf", "max_vertices"),
            )}
        loop = self.fs_manager.load_loop(cmd.require("loop"))
        return {"lift": lift_loop(loop, denominator).to_dict()}

    def fractal(self, cmd: Command) -> Dict[str, Any]:
        which = cmd.require("which")
        op = cmd.require("op")
        if op not in FRACTAL_OPS:
            raise UsageError(f"fractal operation must be one of {', '.join(FRACTAL_OPS)}, got {op!r}")
        coords: List[str] = list(cmd.arg("point", []))
        space = FractalFactory.create(which)
        if op == "rho":
            if len(coords) != 1:
                raise UsageError("rho takes exactly one coordinate")
            return {"rho": str(rho(coords[0]))}
        if op == "member":
            return {"member": space.member(coords)}
        if op == "retract":
            check = not cmd.arg("no_member_check", False)
            return {"retract": [str(c) for c in space.retract(coords, check)], "memberChecked": check}
        if op == "witness":
            return {"witness": witness_loops(which, self.setting("fractal", "witness_level")).to_dict()}
        return {"sweep": retraction_sweep(which, cmd.arg("count", self.setting("fractal", "sample_count")),
                                          cmd.arg("seed", self.setting("fractal", "seed")))}

    # -- coverings ----------------------------------------------------------

    def cover(self, cmd: Command) -> Dict[str, Any]:
        name = cmd.arg("catalog")
        if name:
            catalog = group_catalog()
            if name not in catalog:
                raise UsageError(f"unknown catalog group {name!r}; choose from {', '.join(catalog)}")
            spec = catalog[name]
        else:
            spec = self.fs_manager.load_group(cmd.require("group"), self.setting("covering", "translation_radius"))
        return cover_report(spec, self.setting("covering", "element_cap"))

    def obstruction(self, cmd: Command) -> Dict[str, Any]:
        return {"obstruction": hawaiian_obstruction(cmd.require("p"), cmd.require("m")).to_dict()}
