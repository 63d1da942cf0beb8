import json
from pathlib import Path
from typing import Union
from pydantic import ValidationError
from instance.schema import Instance
from instance.validation import validate
from util.errors import InstanceError
from util.logger import logger


def dumps(instance: Instance) -> str:
    """Serialize an instance to the JSON document format."""
    return json.dumps(instance.model_dump(exclude_none=True), indent=2) + "\n"


def save(instance: Instance, path: Union[str, Path]) -> Path:
    """Write the instance to path; identical instances give identical bytes."""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(instance), encoding="utf-8")
    logger.debug(f"Saved {instance.label()} to {path}")
    return path


def loads(text: str, source: str = "<string>") -> Instance:
    """Parse and validate an instance document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{source}: line {e.lineno}, column {e.colno}: {e.msg}")

    try:
        instance = Instance.model_validate(data)
    except ValidationError as e:
        problems = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise InstanceError(f"{source}: " + "; ".join(problems), problems)

    violations = validate(instance)
    if violations:
        raise InstanceError(f"{source}: " + "; ".join(violations), violations)
    return instance


def load(path: Union[str, Path]) -> Instance:
    """Load an instance file, raising InstanceError on parse or validation failure."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InstanceError(f"Instance file not found: {path}")
    return loads(text, source=str(path))
