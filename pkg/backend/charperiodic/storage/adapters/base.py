from abc import ABC, abstractmethod
from pathlib import Path
from typing import Union

from charperiodic.storage.grid import PeriodicGridFunction


class GridAdapter(ABC):
    """
    Abstract base class for grid-function serialization
    Provides one interface for the text and binary dumps
    """

    #: File suffix used when a path has none
    suffix: str = ""

    @abstractmethod
    def dumps(self, grid: PeriodicGridFunction) -> bytes:
        """Serialize a grid function"""

    @abstractmethod
    def loads(self, data: bytes) -> PeriodicGridFunction:
        """Deserialize a grid function"""

    def write(self, grid: PeriodicGridFunction, path: Union[str, Path]) -> Path:
        target = Path(path)
        if not target.suffix and self.suffix:
            target = target.with_suffix(self.suffix)
        target.write_bytes(self.dumps(grid))
        return target

    def read(self, path: Union[str, Path]) -> PeriodicGridFunction:
        return self.loads(Path(path).read_bytes())
