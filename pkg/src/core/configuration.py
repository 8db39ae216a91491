import os
import yaml
import jsonschema
from pydantic import BaseModel, Field
from typing import Optional

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "..", "..", "config", "sfstri_schema.yaml")
CONFIG_NAME = ".sfstri.yaml"


class BaseOptions(BaseModel):
    enabled: bool = True


class GridOptions(BaseModel):
    pmax: int = 12
    chi_min: int = -4
    b_max: int = 3
    max_fibres: int = 3
    workers: int = 1
    orientable_only: bool = False


class UseCasesOptions(BaseModel):
    norm: BaseOptions = Field(default_factory=BaseOptions)
    walk: BaseOptions = Field(default_factory=BaseOptions)
    lst: BaseOptions = Field(default_factory=BaseOptions)
    build: BaseOptions = Field(default_factory=BaseOptions)
    verify: BaseOptions = Field(default_factory=BaseOptions)
    homology: BaseOptions = Field(default_factory=BaseOptions)
    subdivide: BaseOptions = Field(default_factory=BaseOptions)
    truncate: BaseOptions = Field(default_factory=BaseOptions)
    bound: BaseOptions = Field(default_factory=BaseOptions)
    grid: BaseOptions = Field(default_factory=BaseOptions)


class Configuration(BaseModel):
    output_dir: str = "."
    log_level: str = "WARNING"
    farey_depth: int = 64
    grid: GridOptions = Field(default_factory=GridOptions)
    use_case_options: UseCasesOptions = Field(default_factory=UseCasesOptions)
    fail_on_issues: bool = True


def load_schema():
    with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


def _fail(message: str, problem: Optional[Exception] = None):
    print(f"Error: {message}")
    if problem is not None:
        print(f"Problem: {problem}")
    raise SystemExit(2) from problem


def parse_sfstri_yaml(root: str = ".") -> Configuration:
    config_path = os.path.join(root, CONFIG_NAME)
    if not os.path.exists(config_path):
        return Configuration()

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        _fail(f"{CONFIG_NAME} YAML syntax is not correct", e)
    except OSError as e:
        _fail(f"failed to read {CONFIG_NAME}", e)

    if config is None:
        return Configuration()

    try:
        jsonschema.validate(config, load_schema())
    except jsonschema.ValidationError as e:
        _fail(f"{CONFIG_NAME} does not match the schema: {e.message}")

    return Configuration(**config)
