"""Utility Functions

This script contains helper functions that are used across multiple modules in this project:
configuration from environment variables, logging setup and file output.

These functions can be imported and used in other modules as needed.
"""

import os
import json
import logging
from typing import Dict, Optional, Union

from errors import ConfigError

DEFAULT_Q_LIMIT = 2 ** 20
Q_LIMIT_ENV = "INVFORGE_QLIMIT"
LOG_LEVEL_ENV = "INVFORGE_LOG_LEVEL"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
TEMPLATE_DIRECTORY = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "templates")
MISSING_VALUE_SYMBOL = "---"
CATALOG_PAGE_FIELDS = ("field", "date", "catalog_info", "entries")
TOOL_VERSION = "1.0.0"


def get_q_limit(override: Optional[int] = None) -> int:
    """
        Returns the cap on the field order for exhaustive operations.
        An explicit override wins over the INVFORGE_QLIMIT environment variable.

        @param override: The value given on the command line, if any.

        @return: The q-limit.
    """
    if override is not None:
        raw_limit = str(override)
    else:
        raw_limit = os.getenv(Q_LIMIT_ENV, str(DEFAULT_Q_LIMIT))

    try:
        q_limit = int(raw_limit)
    except ValueError:
        raise ConfigError(f"{Q_LIMIT_ENV} must be an integer, got `{raw_limit}`")

    if q_limit < 2:
        raise ConfigError(f"q-limit must be at least 2, got {q_limit}")

    return q_limit


def setup_logging() -> None:
    """
        Configures the root logger to write to standard error.
        The level is taken from INVFORGE_LOG_LEVEL (default INFO).

        @return: None
    """
    level_name = os.getenv(LOG_LEVEL_ENV, "INFO").upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise ConfigError(f"{LOG_LEVEL_ENV} is not a logging level: `{level_name}`")

    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def ensure_folder_exists(output_path: str) -> None:
    """
        Ensures the folder of an output file exists. Creates it if it doesn't.

        @param output_path: The path of the file that is about to be written.

        @return: None
    """
    folder_path = os.path.dirname(os.path.abspath(output_path))

    # Create the folder if it does not exist
    os.makedirs(folder_path, exist_ok=True)


def save_state_to_json_file(state_to_save: Union[list, dict], output_path: str) -> str:
    """
        Saves a list or dict state to a JSON file with LF line endings.

        @param state_to_save: The list or dict to be saved.
        @param output_path: The path of the output file.

        @return: The path of the output file.
    """
    ensure_folder_exists(output_path)

    with open(output_path, 'w', encoding='utf-8', newline='\n') as json_file:
        json.dump(state_to_save, json_file, ensure_ascii=False, indent=4)
        json_file.write("\n")

    return output_path


def load_template(template_name: str) -> str:
    """
        Loads a markdown template from the templates directory.

        @param template_name: The file name of the template.

        @return: The template content.
    """
    template_path = os.path.join(TEMPLATE_DIRECTORY, template_name)
    with open(template_path, 'r', encoding='utf-8') as template_file:
        return template_file.read()


def fill_catalog_page(template: str, values: Dict[str, Optional[str]]) -> str:
    """
        Fills the {field}, {date}, {catalog_info} and {entries} placeholders of a catalog page.
        Missing values render as `---`.

        @param template: The page template.
        @param values: The value of every catalog page placeholder.

        @return: The filled page.
    """
    unknown = set(values) - set(CATALOG_PAGE_FIELDS)
    if unknown:
        raise ConfigError(f"unknown catalog page fields: {', '.join(sorted(unknown))}")

    for name in CATALOG_PAGE_FIELDS:
        placeholder = f"{{{name}}}"
        if placeholder not in template:
            raise ConfigError(f"catalog page template lacks the {placeholder} placeholder")
        value = values.get(name)
        template = template.replace(placeholder, value if value is not None else MISSING_VALUE_SYMBOL)

    return template
