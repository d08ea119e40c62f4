#!/usr/bin/env python3
"""
File System Manager for the perforated surfaces toolkit

This module reads descriptor, loop and group files and writes reports.
"""

import json
import os
from typing import Any, Optional

import yaml

from covering import GroupSpec
from errors import ToolkitError, UsageError
from planegeom import PLLoop
from surface import SurfaceDescriptor


class FileSystemManager:
    """Manages file system operations for the toolkit"""

    def __init__(self, output_dir: str = ".") -> None:
        """Initialize with the base directory for relative report paths"""
        self.output_dir: str = output_dir

    def ensure_directory(self, path: str) -> None:
        """Ensure that a directory exists, creating it if necessary"""
        if path:
            os.makedirs(path, exist_ok=True)

    def read_structured(self, path: str) -> Any:
        """Read a JSON or YAML file, chosen by extension"""
        try:
            with open(path, 'r') as f:
                if path.endswith(('.yaml', '.yml')):
                    return yaml.safe_load(f)
                return json.load(f)
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}")
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise UsageError(f"{path} is not valid structured data: {e}")

    def load_descriptor(self, path: str) -> SurfaceDescriptor:
        data = self.read_structured(path)
        if not isinstance(data, dict):
            raise UsageError(f"{path} must hold an object with genus, orient and ends")
        return SurfaceDescriptor.from_dict(data)

    def load_loop(self, path: str) -> PLLoop:
        return PLLoop.parse(self.read_structured(path))

    def load_group(self, path: str, default_radius: Optional[int] = None) -> GroupSpec:
        """Group spec; translation groups without a radius get default_radius"""
        data = self.read_structured(path)
        if not isinstance(data, dict):
            raise UsageError(f"{path} must hold a group object")
        if data.get("type") == "translations" and "radius" not in data:
            data["radius"] = default_radius
        return GroupSpec.from_dict(data)

    def dumps_json(self, data: Any) -> str:
        """Deterministic JSON text for a report"""
        return json.dumps(data, indent=2, sort_keys=True)

    def write_file(self, path: str, content: str) -> None:
        """Write content to a file"""
        path = os.path.join(self.output_dir, path)
        self.ensure_directory(os.path.dirname(path))
        with open(path, 'w') as f:
            f.write(content)

    def write_json(self, path: str, data: Any) -> None:
        """Write JSON data to a file"""
        self.write_file(path, self.dumps_json(data) + "\n")

    def write_yaml(self, path: str, data: Any) -> None:
        """Write YAML data to a file"""
        self.write_file(path, yaml.safe_dump(data, sort_keys=True))

    def write_report(self, path: str, report: Any) -> None:
        """Write a report as YAML or JSON by extension"""
        try:
            if path.endswith(('.yaml', '.yml')):
                self.write_yaml(path, report)
            else:
                self.write_json(path, report)
        except OSError as e:
            raise ToolkitError(f"cannot write {path}: {e.strerror}")
