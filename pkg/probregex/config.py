from pydantic_settings import BaseSettings, SettingsConfigDict


class ToolkitConfig(BaseSettings):
    # Load environment variables from a local .env file (current working directory)
    # and require the PROBREGEX_ prefix for all settings
    model_config = SettingsConfigDict(env_prefix="PROBREGEX_", env_file=".env", env_file_encoding="utf-8")

    derivative_cache_size: int = 4096  # LRU entries for memoised derivatives, termination weights and renderings

    approx_digits: int | None = None  # Decimal approximation is opt-in

    # Axiom soundness harness
    axioms_trials: int = 200
    axioms_seed: int = 1
    axioms_max_depth: int = 4
    axioms_max_denominator: int = 12

    random_gpts_max_states: int = 5

    log_level: str = "WARNING"


config = ToolkitConfig()
