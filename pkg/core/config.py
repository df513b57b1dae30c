# core/config.py

from pydantic_settings import BaseSettings


class FairdagConfig(BaseSettings):
    """Configuration for the fairdag solvers and command line."""

    # Exact oracle
    oracle_budget: int = 100_000_000  # Branch nodes before BudgetExceeded
    oracle_level_kernel: bool = True  # Branch only on the top-k levels

    # Modular FPT solvers
    guess_budget: int = 10_000_000

    # Out-forest dynamic program
    dp_k_cap: int = 4
    dp_state_cap: int = 2_000_000  # Profiles per set

    # Logging
    log_level: str = "WARNING"

    class Config:
        env_file = ".env"
        env_prefix = "FDAG_"


# Global config instance
config = FairdagConfig()
