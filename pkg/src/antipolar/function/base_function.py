import inspect
import logging
import time
import uuid
from typing import Any, Callable, Dict, Type, get_type_hints

from pydantic import BaseModel

logger = logging.getLogger(__name__)


class Function:
    """
    A named pipeline stage: a callable taking one Pydantic model and returning one.
    The Pipeline chains Functions and the stage models are inferred from type hints.

    Methods:
        as_Function(func: Callable) -> 'Function': Wraps an annotated callable.
        to_function(self) -> Callable: Returns a callable that validates input and output models.
    """

    def __init__(
        self,
        input_model: Type[BaseModel],
        output_model: Type[BaseModel],
        func: Callable,
        label: str = "",
    ):
        self.input_model = input_model
        self.output_model = output_model
        self.function = func
        self.name = func.__name__
        self.label = label
        self.id = str(uuid.uuid4())

    @staticmethod
    def as_Function(func: Callable, label: str = "") -> "Function":
        """
        Converts an annotated callable `f(state: InModel) -> OutModel` into a Function.

        Raises:
            TypeError: when the single parameter or the return value is not annotated
                with a Pydantic model.
        """
        type_hints = get_type_hints(func)
        input_model = Function._input_model(func, type_hints)
        output_model = Function._output_model(func, type_hints)
        return Function(input_model, output_model, func, label=label)

    @staticmethod
    def _is_model(annotation: Any) -> bool:
        return isinstance(annotation, type) and issubclass(annotation, BaseModel)

    @staticmethod
    def _input_model(func: Callable, type_hints: Dict[str, Any]) -> Type[BaseModel]:
        params = list(inspect.signature(func).parameters)
        if len(params) != 1 or not Function._is_model(type_hints.get(params[0])):
            raise TypeError(f"stage {func.__name__} must take exactly one Pydantic model argument")
        return type_hints[params[0]]

    @staticmethod
    def _output_model(func: Callable, type_hints: Dict[str, Any]) -> Type[BaseModel]:
        return_type = type_hints.get("return")
        if not Function._is_model(return_type):
            raise TypeError(f"stage {func.__name__} must return a Pydantic model")
        return return_type

    @property
    def display_name(self) -> str:
        return self.name if self.label == "" else self.label

    def to_function(self) -> Callable:
        """
        Compiles the stage into a callable that coerces dict input into the input model
        and checks the returned model type.
        """
        input_model = self.input_model
        output_model = self.output_model
        function = self.function
        display_name = self.display_name

        def wrapper(input_data: input_model) -> output_model:
            data = input_model(**input_data) if isinstance(input_data, dict) else input_data
            start_time = time.perf_counter()
            result = function(data)
            logger.debug(
                f"Function [{display_name}] completed in {time.perf_counter() - start_time:.2f} seconds"
            )
            if isinstance(result, dict):
                result = output_model(**result)
            if not isinstance(result, output_model):
                raise TypeError(
                    f"stage {display_name} returned {type(result).__name__}, expected {output_model.__name__}"
                )
            return result

        wrapper.__name__ = self.name
        return wrapper
