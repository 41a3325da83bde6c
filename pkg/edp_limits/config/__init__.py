from .core import ConfigPaths, ConfigManager, InvalidConfigError, ExtraValuesError, get_config
