"""HTTP service wrapping the kinematics core.

Robots are registered once from ``.rkin`` source and then served to any
number of clients; all kinematics calls are pure functions over the
immutable model, so concurrent queries need no locking beyond the registry.
"""

import math
import threading
import uuid

import numpy as np
from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from .. import rkinfile
from ..errors import DomainError, InputError, ModelError, ParseError, UnknownLinkError
from ..fk import forward_kinematics
from ..model import RobotModel, joint_states
from ..rotation import exp_so3, log_so3, rpy, validate_rotation
from ..transform import apply
from ..velocity import end_point_velocity, finite_difference_check
from . import schemas

_CORE_ERRORS = (DomainError, InputError, ModelError, UnknownLinkError)


class RobotRegistry:
    def __init__(self):
        self._robots: dict[str, RobotModel] = {}
        self._lock = threading.Lock()

    def add(self, model: RobotModel) -> str:
        robot_id = uuid.uuid4().hex[:12]
        with self._lock:
            self._robots[robot_id] = model
        return robot_id

    def get(self, robot_id: str) -> RobotModel:
        with self._lock:
            model = self._robots.get(robot_id)
        if model is None:
            raise HTTPException(status_code=404, detail=f"unknown robot id {robot_id!r}")
        return model

    def remove(self, robot_id: str) -> None:
        with self._lock:
            if robot_id not in self._robots:
                raise HTTPException(status_code=404, detail=f"unknown robot id {robot_id!r}")
            del self._robots[robot_id]


def _info(robot_id: str, model: RobotModel) -> schemas.RobotInfo:
    return schemas.RobotInfo(robot_id=robot_id, root_id=model.root_id,
                             link_count=len(model))


def _angles(values: dict[int, float], degrees: bool) -> dict[int, float]:
    if not degrees:
        return dict(values)
    return {i: math.radians(v) for i, v in values.items()}


def create_app() -> FastAPI:
    app = FastAPI(title="rkin", description="Rigid-body kinematics service",
                  version="0.1.0")
    registry = RobotRegistry()
    app.state.registry = registry

    @app.exception_handler(ParseError)
    async def _parse_error(request, exc: ParseError):
        from fastapi.responses import JSONResponse
        payload = {"detail": str(exc), "line": exc.line}
        if exc.column is not None:
            payload["column"] = exc.column
        return JSONResponse(status_code=400, content=payload)

    @app.exception_handler(DomainError)
    @app.exception_handler(InputError)
    @app.exception_handler(ModelError)
    @app.exception_handler(UnknownLinkError)
    async def _core_error(request, exc):
        from fastapi.responses import JSONResponse
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/robots", response_model=schemas.RobotInfo)
    def register_robot(body: schemas.RobotSource):
        model = rkinfile.parse(body.source)
        robot_id = registry.add(model)
        return _info(robot_id, model)

    @app.get("/robots/{robot_id}", response_model=schemas.RobotInfo)
    def robot_info(robot_id: str):
        return _info(robot_id, registry.get(robot_id))

    @app.delete("/robots/{robot_id}", status_code=204)
    def delete_robot(robot_id: str):
        registry.remove(robot_id)

    @app.get("/robots/{robot_id}/source", response_class=PlainTextResponse)
    def robot_source(robot_id: str):
        return rkinfile.serialize(registry.get(robot_id))

    @app.get("/robots/{robot_id}/tree", response_model=schemas.TreeResponse)
    def robot_tree(robot_id: str):
        model = registry.get(robot_id)
        links = []
        for nid in model.traverse():
            rec = model.link(nid)
            links.append(schemas.LinkInfo(
                id=rec.self_id, name=rec.name, parent=rec.parent_id,
                child=rec.child_id, sibling=rec.sibling_id,
                axis=list(rec.joint_axis), offset=list(rec.offset),
                mass=rec.mass, com=list(rec.com),
                inertia=[list(row) for row in rec.inertia]))
        return schemas.TreeResponse(robot_id=robot_id, links=links)

    @app.post("/robots/{robot_id}/fk", response_model=schemas.FkResponse)
    def fk(robot_id: str, body: schemas.FkRequest):
        model = registry.get(robot_id)
        states = joint_states(_angles(body.joints, body.degrees))
        poses = forward_kinematics(model, states)
        pose = poses[model.link(body.link_id).self_id]
        position = apply(pose, np.array(body.point))
        return schemas.FkResponse(position=list(position),
                                  rotation=[list(row) for row in pose.rotation])

    @app.post("/robots/{robot_id}/velocity", response_model=schemas.VelocityResponse)
    def velocity(robot_id: str, body: schemas.VelocityRequest):
        model = registry.get(robot_id)
        joints = _angles(body.joints, body.degrees)
        rates = _angles(body.rates, body.degrees)
        states = joint_states(joints, rates)
        poses = forward_kinematics(model, states)
        vel = end_point_velocity(model, poses, states, body.link_id, np.array(body.point))
        residual = None
        if body.fd_check_h is not None:
            residual = finite_difference_check(model, joints, rates, body.link_id,
                                               np.array(body.point), h=body.fd_check_h)
        return schemas.VelocityResponse(linear=list(vel.linear),
                                        angular=list(vel.angular),
                                        fd_residual=residual)

    @app.post("/rotations/exp", response_model=schemas.MatrixResponse)
    def rotation_exp(body: schemas.ExpRequest):
        angle = math.radians(body.angle) if body.degrees else body.angle
        matrix = exp_so3(np.array(body.axis), angle)
        return schemas.MatrixResponse(matrix=[list(row) for row in matrix])

    @app.post("/rotations/log", response_model=schemas.VectorResponse)
    def rotation_log(body: schemas.LogRequest):
        matrix = validate_rotation(np.array(body.matrix))
        return schemas.VectorResponse(vector=list(log_so3(matrix)))

    @app.post("/rotations/rpy", response_model=schemas.MatrixResponse)
    def rotation_rpy(body: schemas.RpyRequest):
        angles = (body.roll, body.pitch, body.yaw)
        if body.degrees:
            angles = tuple(math.radians(a) for a in angles)
        return schemas.MatrixResponse(matrix=[list(row) for row in rpy(*angles)])

    return app


app = create_app()
