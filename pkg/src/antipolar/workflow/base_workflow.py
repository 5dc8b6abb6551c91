import logging
import uuid
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Hashable, List, Tuple

logger = logging.getLogger(__name__)


class Workflow:
    """
    Runs many independent jobs in parallel. Jobs share nothing; results are returned
    in submission order regardless of completion order, so parallel runs stay
    deterministic.

    Methods:
        init(name: str, max_workers: int = None) -> Workflow: Creates an empty workflow.
        jobs(jobs: List[Tuple[key, callable, args]]) -> Workflow: Registers the jobs to run.
        run() -> Dict[key, result]: Runs all jobs on a thread pool.
        build() -> Dict[key, result]: Runs all jobs sequentially in the calling thread.
    """

    def __init__(self, name: str, id: str = None, max_workers: int = None):
        self.name = name
        self.id = id if id else str(uuid.uuid4())
        self.max_workers = max_workers
        self.workflow_jobs: List[Tuple[Hashable, Callable, tuple]] = []

    @staticmethod
    def init(name: str, max_workers: int = None, id: str = None) -> "Workflow":
        """Initializes a new Workflow instance with a specified name."""

        return Workflow(name=name, id=id, max_workers=max_workers)

    def jobs(self, jobs: List[Tuple[Hashable, Callable, tuple]]) -> "Workflow":
        """Sets the list of (key, callable, args) jobs for the Workflow."""
        keys = [key for key, _, _ in jobs]
        if len(set(keys)) != len(keys):
            raise ValueError("workflow job keys must be unique")
        self.workflow_jobs = list(jobs)
        return self

    def build(self) -> Dict[Hashable, Any]:
        """Runs all jobs one after another."""
        results = {}
        for key, func, args in self.workflow_jobs:
            results[key] = func(*args)
        return results

    def run(self) -> Dict[Hashable, Any]:
        """Runs all jobs in parallel using threading."""
        if self.max_workers == 1:
            return self.build()

        results = {}
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(func, *args) for _, func, args in self.workflow_jobs]
            for (key, _, _), future in zip(self.workflow_jobs, futures):
                results[key] = future.result()

        logger.debug(f"Workflow [{self.name}] finished {len(results)} jobs")
        return results
