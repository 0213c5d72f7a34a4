from .coordinator import CommandCoordinator, RunConfig, run_command

__all__ = ['CommandCoordinator', 'RunConfig', 'run_command']
