"""Runtime budgets from config.yaml, .env files and PENPLAN_* variables."""

import os
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, PositiveInt, ValidationError

from penplan.errors import PenplanError
from penplan.ground import DEFAULT_GROUND_BUDGET
from penplan.planner import DEFAULT_SEARCH_BUDGET
from penplan.policy_eval import DEFAULT_STATE_BOUND

CONFIG_ENV = 'PENPLAN_CONFIG'
ENV_PREFIX = 'PENPLAN_'


class Settings(BaseModel):
  """Search, grounding and state-enumeration budgets."""
  ground_budget: PositiveInt = DEFAULT_GROUND_BUDGET
  search_budget: PositiveInt = DEFAULT_SEARCH_BUDGET
  state_bound: PositiveInt = DEFAULT_STATE_BOUND


def load_env_files() -> None:
  """Load .env.local over .env; values already in the environment win."""
  for filepath in ('.env.local', '.env'):
    if Path(filepath).exists():
      load_dotenv(filepath, override=False)


def load_config(path: Optional[str] = None) -> dict:
  """Load configuration from config.yaml (or `path` / $PENPLAN_CONFIG)."""
  config_path = Path(path or os.environ.get(CONFIG_ENV, 'config.yaml'))
  if not config_path.exists():
    if path:
      raise PenplanError(f'cannot read {config_path}')
    return {}
  with open(config_path, 'r') as f:
    data = yaml.safe_load(f) or {}
  if not isinstance(data, dict):
    raise PenplanError('config must be a mapping', path=str(config_path))
  return data


def load_settings(path: Optional[str] = None) -> Settings:
  """Merge YAML config with PENPLAN_<FIELD> environment overrides.

  Raises:
      PenplanError: unreadable config file or invalid values
  """
  load_env_files()
  values = load_config(path)
  for name in Settings.model_fields:
    env_value = os.environ.get(f'{ENV_PREFIX}{name.upper()}')
    if env_value is not None:
      values[name] = env_value
  try:
    return Settings(**values)
  except ValidationError as e:
    first = e.errors()[0]
    field = '.'.join(str(p) for p in first['loc'])
    raise PenplanError(f'invalid config value for {field}: {first["msg"]}') from None
