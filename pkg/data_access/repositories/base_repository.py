"""
Base repository pattern implementation.
Data Access Layer - Repository Package
"""

from abc import ABC
from typing import Any, Dict, Generic, Iterable, List, Optional, TypeVar

from infrastructure.errors import ContractViolation

T = TypeVar("T")


class BaseRepository(Generic[T], ABC):
    """
    In-memory registry of immutable records keyed by their `id` attribute.

    Records keep their registration order, which is the listing order.
    """

    def __init__(self, records: Iterable[T] = ()):
        self._records: Dict[str, T] = {}
        for record in records:
            self.add(record)

    def add(self, record: T) -> T:
        """
        Register a record.

        Args:
            record: Object with a unique string `id`

        Returns:
            The registered record
        """
        record_id = getattr(record, "id")
        if record_id in self._records:
            raise ContractViolation(f"duplicate {type(record).__name__} id '{record_id}'")
        self._records[record_id] = record
        return record

    def get_by_id(self, record_id: str) -> Optional[T]:
        """
        Get record by ID.

        Args:
            record_id: Record ID

        Returns:
            Record or None if not found
        """
        return self._records.get(record_id)

    def get_all(self) -> List[T]:
        """Get all records in registration order."""
        return list(self._records.values())

    def find_by_criteria(self, criteria: Dict[str, Any]) -> List[T]:
        """
        Find records whose attributes equal every criterion.

        Args:
            criteria: Attribute name -> required value

        Returns:
            Matching records in registration order
        """
        return [
            record
            for record in self._records.values()
            if all(getattr(record, key, None) == value for key, value in criteria.items())
        ]
