"""
Report storage for JSON reports and CSV field dumps.
Infrastructure Layer - Storage Package
"""

import asyncio
import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import aiofiles

from infrastructure.config.settings import get_settings
from infrastructure.errors import ReportWriteError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoredArtifact:
    """Path, byte size and sha256 digest of a written file."""

    path: str
    size: int
    sha256: str


class ReportStorage:
    """
    Single writer for every artifact a command produces.
    Relative paths resolve against the configured output directory.
    """

    def __init__(self, output_dir: Optional[Union[str, Path]] = None):
        self.output_dir = Path(output_dir if output_dir is not None else get_settings().output_dir)

    def resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.output_dir / path

    async def save_text(self, path: Union[str, Path], content: str) -> StoredArtifact:
        """
        Write text as UTF-8 without newline translation.

        Args:
            path: Absolute path, or path relative to the output directory
            content: File content

        Returns:
            StoredArtifact

        Raises:
            ReportWriteError: the file or its directory cannot be written
        """
        target = self.resolve(path)
        data = content.encode("utf-8")
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            async with aiofiles.open(target, "wb") as f:
                await f.write(data)
        except OSError as e:
            raise ReportWriteError(f"cannot write {target}: {e.strerror or e}") from e

        artifact = StoredArtifact(str(target), len(data), hashlib.sha256(data).hexdigest())
        logger.info("wrote %s (%d bytes, sha256 %s)", artifact.path, artifact.size, artifact.sha256[:12])
        return artifact

    def write_text(self, path: Union[str, Path], content: str) -> StoredArtifact:
        """Blocking wrapper around save_text for synchronous callers."""
        return asyncio.run(self.save_text(path, content))
