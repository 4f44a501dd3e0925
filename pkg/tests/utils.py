import os
from functools import wraps
from typing import Any

from relcomp import RelcompLoggingConfig, Structure
from relcomp.configurator import LimitsConfig, RelcompSettingsBaseModel, RelcompSettingsMainModel


def remove_env_vars(app_name: str):
    """Remove every environment variables that could interfere with the config.

    Args:
        app_name: The name of the application, needed in order to select only the relevant variables in ENV
    """
    for key in list(os.environ.keys()):
        if key.startswith(app_name):
            del os.environ[key]


def clear_env_vars(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        remove_env_vars("FAKE_TOOL")

        try:
            result = fn(*args, **kwargs)
        finally:
            remove_env_vars("FAKE_TOOL")

        return result

    return wrapper


class MockRunConfig(RelcompSettingsBaseModel):
    family: str = "petersen"
    output_format: str = "json"
    no_default: str | None = None
    d: dict[str, Any] = {}


class Mocklevel3Config(RelcompSettingsBaseModel):
    level4: str = "value"


class MockLevel2Config(RelcompSettingsBaseModel):
    level3: Mocklevel3Config


class MockLevel1Config(RelcompSettingsBaseModel):
    level2: MockLevel2Config = MockLevel2Config()


class MockConfig(RelcompSettingsMainModel):
    timeout: int = 20
    run: MockRunConfig
    logging: RelcompLoggingConfig
    limits: LimitsConfig
    level1: MockLevel1Config


mock_default_config = MockConfig(_relcomp=None).model_dump()


def graph(n: int, edges: str = "") -> Structure:
    """Graph from a compact edge string such as "0-1 1-2"."""
    return Structure.graph(n, [tuple(int(x) for x in token.split("-")) for token in edges.split()])
