from abc import ABC, abstractmethod
from typing import Generic, TypeVar

T = TypeVar("T")


class BaseRepository(ABC, Generic[T]):

    @abstractmethod
    def save(self, key: str, entity: T) -> T:
        pass

    @abstractmethod
    def get(self, key: str) -> T | None:
        pass

    @abstractmethod
    def keys(self) -> list[str]:
        pass
