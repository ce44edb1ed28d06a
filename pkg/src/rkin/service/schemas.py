"""Request/response models for the HTTP service."""

from pydantic import BaseModel, Field


class RobotSource(BaseModel):
    source: str = Field(..., description="robot description in .rkin text form")


class RobotInfo(BaseModel):
    robot_id: str
    root_id: int
    link_count: int


class LinkInfo(BaseModel):
    id: int
    name: str
    parent: int | None
    child: int | None
    sibling: int | None
    axis: list[float]
    offset: list[float]
    mass: float
    com: list[float]
    inertia: list[list[float]]


class TreeResponse(BaseModel):
    robot_id: str
    links: list[LinkInfo]


class FkRequest(BaseModel):
    joints: dict[int, float] = {}
    link_id: int
    point: tuple[float, float, float] = (0.0, 0.0, 0.0)
    degrees: bool = False


class FkResponse(BaseModel):
    position: list[float]
    rotation: list[list[float]]


class VelocityRequest(FkRequest):
    rates: dict[int, float] = {}
    fd_check_h: float | None = None


class VelocityResponse(BaseModel):
    linear: list[float]
    angular: list[float]
    fd_residual: float | None = None


class ExpRequest(BaseModel):
    axis: tuple[float, float, float]
    angle: float
    degrees: bool = False


class LogRequest(BaseModel):
    matrix: list[list[float]]


class RpyRequest(BaseModel):
    roll: float
    pitch: float
    yaw: float
    degrees: bool = False


class MatrixResponse(BaseModel):
    matrix: list[list[float]]


class VectorResponse(BaseModel):
    vector: list[float]
