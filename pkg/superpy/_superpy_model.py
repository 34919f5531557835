"""
Superpy Base Model Module.

Internal class.

This module defines the base model for every report object produced by
superpy: ideal reports, verdicts, dimension profiles, census rows and the
verification transcript.

The `_SuperpyModel` class extends Pydantic's BaseModel to provide:
- Standard serialization methods (JSON, dictionary)
- String representation methods
- Support for fields holding algebra elements, which serialize as their
  canonical strings

Classes:
    _SuperpyModel: Base class for all superpy report models.
"""

import json

from pydantic import BaseModel, ConfigDict


class _SuperpyModel(BaseModel):
    """
    Base model class for superpy reports.

    Reports may carry live `Element` objects so that witnesses can be fed back
    into the library; subclasses declare field serializers that turn them into
    canonical strings, so `to_json()` is always plain JSON.

    Methods:
        __str__(): Return string representation of the model instance.
        __repr__(): Return string representation of the model instance.
        to_json(): Serialize the model instance to a JSON string.
        to_dict(): Convert the model instance to a JSON-compatible dictionary.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def __str__(self):
        return f"{type(self).__name__}({self.to_dict()})"

    def __repr__(self):
        return f"{self.__class__}({self.model_dump()})"

    def to_json(self) -> str:
        """
        Serializes the model to a JSON-formatted string.

        Returns:
            str: A JSON string representation of the model, with indentation for readability.

        Notes:
            - Field order follows the model declaration and every list in a report
              is produced in a fixed order, so identical inputs give identical text.
        """

        return json.dumps(self.to_dict(), indent=4, sort_keys=False, default=str)

    def to_dict(self) -> dict:
        """
        Return a JSON-compatible dictionary representation of the model.

        Returns:
            dict: A mapping of field names to their serialized values, with
            elements rendered as strings.
        """

        return self.model_dump(mode="json")
