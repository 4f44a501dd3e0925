from relcomp.configurator import (
    BaseProcessor,
    Config,
    RelcompLoggingConfig,
    RelcompSettings,
    get_settings,
    load_logging_config,
)
from relcomp.core import GRAPH_SIGNATURE, Lift, PartialMap, Signature, Structure

__all__ = [
    "Config",
    "BaseProcessor",
    "RelcompLoggingConfig",
    "RelcompSettings",
    "get_settings",
    "load_logging_config",
    "GRAPH_SIGNATURE",
    "Lift",
    "PartialMap",
    "Signature",
    "Structure",
]
