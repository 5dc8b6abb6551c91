import logging
import time
import types
import uuid
from typing import Callable, List, Type, Union

from pydantic import BaseModel, ValidationError

from ..errors import AntipolarError
from ..function import Function

logger = logging.getLogger(__name__)


class Pipeline:
    """
    Chains a sequence of stages over Pydantic models. Each stage receives the output of
    the previous one; the pipeline input and output models are inferred from the first
    and last stage when not set explicitly.

    Methods:
        init(name: str): Initializes a new Pipeline instance with a specified name.
        input(input_model: Type[BaseModel]): Sets the input model type for the pipeline.
        output(output_model: Type[BaseModel]): Sets the output model type for the pipeline.
        functions(functions: List[Callable]): Registers a list of stages to the pipeline.
        to_function() -> Callable: Compiles the pipeline into a callable function.
        run(input_data): Runs the pipeline, raising on failure.
        build(input_data) -> dict: Runs the pipeline and returns a status envelope.

    Example usage:
        pipeline = Pipeline.init("analyze").functions([hull_stage, lattice_stage, verify_stage])
        state = pipeline.run(AnalysisState(cloud=cloud, tol=tol))
    """

    def __init__(self):
        self.name: str = ""
        self.id: str = ""
        self.input_model: Type[BaseModel] = None
        self.output_model: Type[BaseModel] = None
        self.list_functions: List[Function] = []

    @staticmethod
    def init(name: str, id: str = None) -> "Pipeline":
        """Initializes a new Pipeline instance with a specified name."""

        __pipeline = Pipeline()
        __pipeline.name = name
        __pipeline.id = id if id else str(uuid.uuid4())
        return __pipeline

    def input(self, input_model: Type[BaseModel]):
        """Sets the input model type for the pipeline."""

        self.input_model = input_model
        return self

    def output(self, output_model: Type[BaseModel]):
        """Sets the output model type for the pipeline."""

        self.output_model = output_model
        return self

    def functions(self, functions: List[Union[Callable, Function]]):
        """Registers a list of stages to the pipeline."""

        for f in functions:
            self.list_functions.append(f if isinstance(f, Function) else Function.as_Function(f))

        if not self.input_model and self.list_functions:
            self.input_model = self.list_functions[0].input_model

        if not self.output_model and self.list_functions:
            self.output_model = self.list_functions[-1].output_model

        return self

    def to_function(self) -> Callable:
        """Compiles the pipeline into a synchronous callable function."""

        def _pipeline_function(input_data: self.input_model) -> self.output_model:
            data = input_data
            for func in self.list_functions:
                data = func.to_function()(data)
            return data

        # Dynamically create a function with the specified pipeline name
        pipeline_function = types.FunctionType(
            _pipeline_function.__code__,
            _pipeline_function.__globals__,
            name=self.name,
            argdefs=_pipeline_function.__defaults__,
            closure=_pipeline_function.__closure__,
        )
        pipeline_function.__annotations__ = _pipeline_function.__annotations__

        return pipeline_function

    def run(self, input_data: Union[dict, BaseModel]) -> BaseModel:
        """Runs the pipeline on a model instance (or a dict for the input model)."""

        start_time = time.perf_counter()
        input_instance = self.input_model(**input_data) if isinstance(input_data, dict) else input_data
        output_instance = self.to_function()(input_instance)
        logger.info(f"Pipeline [{self.name}] completed in {time.perf_counter() - start_time:.2f} seconds")
        return output_instance

    def build(self, input_data: Union[dict, BaseModel]) -> dict:
        """
        Runs the pipeline and checks the output against the output model.

        Returns:
            dict: A dictionary with 'status', 'result', and 'message' keys indicating the success or failure
                  of the pipeline execution, the resulting model, or the error message.
        """
        try:
            output_instance = self.run(input_data)
        except ValidationError as e:
            return {
                "status": "failed",
                "result": None,
                "message": f"Input data validation error: {e}",
            }
        except AntipolarError as e:
            return {
                "status": "failed",
                "result": None,
                "message": f"{type(e).__name__}: {e}",
                "error": e,
            }

        if not isinstance(output_instance, self.output_model):
            return {
                "status": "failed",
                "result": None,
                "message": "Output schema mismatch. The output did not match the expected model schema.",
            }
        return {
            "status": "success",
            "message": "Pipeline built successfully.",
            "result": output_instance,
        }
