from charperiodic.storage.adapters.base import GridAdapter
from charperiodic.storage.adapters.binary import BinaryGridAdapter
from charperiodic.storage.adapters.csv import CsvGridAdapter


class AdapterFactory:
    """Factory for grid-function serialization adapters"""

    adapters = {
        "csv": CsvGridAdapter,
        "binary": BinaryGridAdapter,
    }

    @classmethod
    def create_adapter(cls, fmt: str) -> GridAdapter:
        """
        Create the adapter for an output format

        Args:
            fmt: "csv" or "binary"

        Returns:
            Adapter instance

        Raises:
            ValueError: If the format is not supported
        """
        adapter_class = cls.adapters.get(fmt.lower())
        if not adapter_class:
            raise ValueError(
                f"Unsupported grid format: {fmt}. "
                f"Supported formats: {', '.join(cls.adapters.keys())}"
            )
        return adapter_class()


def get_adapter(fmt: str = "csv") -> GridAdapter:
    """
    Convenience function to get a grid adapter

    Usage:
        from charperiodic.storage.adapters import get_adapter
        get_adapter("binary").write(result.u, "solution.pgf")
    """
    return AdapterFactory.create_adapter(fmt)


__all__ = ["AdapterFactory", "BinaryGridAdapter", "CsvGridAdapter", "GridAdapter", "get_adapter"]
