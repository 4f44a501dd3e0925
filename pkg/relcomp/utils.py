# utils.py
import json
from contextlib import contextmanager
from tempfile import NamedTemporaryFile, _TemporaryFileWrapper  # noqa
from typing import Any, Dict, Generator, Optional, cast
from unittest.mock import patch

import pkg_resources
import yaml

from relcomp.errors import SearchLimitExceeded


def convert_type(value: str) -> str | bool | int | dict | list:
    if value.lower() in ["y", "yes", "t", "true"]:
        return True

    if value.lower() in ["n", "no", "f", "false"]:
        return False

    if value.lstrip("-").isdigit():
        return int(value)

    if isinstance(value, str) and (value.startswith("{") or value.startswith("[")):
        try:
            return cast(dict | list, json.loads(value))
        except json.JSONDecodeError:
            pass

    return value


@contextmanager
def mock_config_file(local_values: Optional[Dict] = None) -> Generator[None, None, None]:
    """Spoof the packaged settings file by mocking out the return value of pkg_resources.resource_filename().

    To be used as a context manager with the with-as syntax. This function is intended to facilitate unit testing.

    Args:
        local_values: Dict object that contains the key-value pairs for all the variables to be put into the fake
            local.yml file.
    """

    def save_as_tmp(_config: Dict[str, Dict[str, Any]], temp_file: _TemporaryFileWrapper) -> str:
        if not _config:
            return "this-is-not-a-valid-path.yml"
        with open(temp_file.name, "w") as file_buffer:
            yaml.dump(_config, file_buffer)
        return temp_file.name

    configs = {}

    if local_values:
        local_temp_file = NamedTemporaryFile()
        configs["local.yml"] = save_as_tmp(local_values, local_temp_file)

    def mock_resource_filename(_: Any, resource: str) -> Any:
        return configs.get(resource, "")

    _real_resource_filename = pkg_resources.resource_filename

    try:
        with patch("pkg_resources.resource_filename", mock_resource_filename):
            yield
    finally:
        pkg_resources.resource_filename = _real_resource_filename


class NodeBudget:
    """Counts search nodes and raises once the configured limit is crossed."""

    def __init__(self, what: str, limit: int) -> None:
        self.what = what
        self.limit = limit
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise SearchLimitExceeded(self.what, self.limit)


class UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def classes(self) -> list[list[int]]:
        """Classes as sorted lists, ordered by their smallest member."""
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())
