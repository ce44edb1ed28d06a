"""Command-line interface.

Thin client over the core package: ``fk``, ``vel``, ``rot`` and ``tree``
read a ``.rkin`` robot file or numeric flags, print deterministic text at
17 significant digits, and exit 0 on success, 1 on domain/model errors,
2 on usage errors. ``serve`` starts the HTTP service.
"""

import argparse
import math
import sys

import numpy as np

from . import rkinfile, textfmt
from .errors import DomainError, InputError, ModelError, ParseError, UnknownLinkError
from .fk import forward_kinematics
from .model import joint_states
from .rotation import exp_so3, log_so3, rpy, validate_rotation
from .transform import apply
from .velocity import end_point_velocity, finite_difference_check

_CORE_ERRORS = (DomainError, InputError, ModelError, ParseError, UnknownLinkError)


def _joint_map(text: str) -> dict[int, float]:
    """Parse ``id=val,id=val`` flag syntax."""
    result: dict[int, float] = {}
    if not text:
        return result
    for pair in text.split(","):
        key, sep, value = pair.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected id=value, got {pair!r}")
        try:
            link_id = int(key)
        except ValueError:
            raise argparse.ArgumentTypeError(f"link id must be an integer: {key!r}")
        if link_id in result:
            raise argparse.ArgumentTypeError(f"link id {link_id} given twice")
        try:
            result[link_id] = textfmt.parse_float(value)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    return result


def _float_list(count: int):
    def convert(text: str) -> list[float]:
        try:
            return textfmt.parse_float_list(text, count)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc))
    return convert


def _to_radians(values: dict[int, float]) -> dict[int, float]:
    return {i: math.radians(v) for i, v in values.items()}


def _load_robot(path: str):
    try:
        return rkinfile.load(path)
    except OSError as exc:
        raise InputError(f"cannot read robot file {path!r}: {exc.strerror or exc}")


def _csv_row(values) -> str:
    return ",".join(textfmt.fmt_float(v) for v in values)


def _cmd_fk(args) -> int:
    model = _load_robot(args.robot)
    joints = _to_radians(args.joints) if args.degrees else args.joints
    poses = forward_kinematics(model, joint_states(joints))
    pose = poses[model.link(args.link).self_id]
    position = apply(pose, np.array(args.point))
    if args.csv:
        print("px,py,pz,r11,r12,r13,r21,r22,r23,r31,r32,r33")
        print(_csv_row(list(position) + list(pose.rotation.ravel())))
    else:
        print(f"p={textfmt.fmt_vector(position)}")
        print(f"R={textfmt.fmt_matrix(pose.rotation)}")
    return 0


def _cmd_vel(args) -> int:
    model = _load_robot(args.robot)
    joints = args.joints
    rates = args.djoints
    if args.degrees:
        joints = _to_radians(joints)
        rates = _to_radians(rates)
    states = joint_states(joints, rates)
    poses = forward_kinematics(model, states)
    vel = end_point_velocity(model, poses, states, args.link, np.array(args.point))
    residual = None
    if args.check_fd is not None:
        residual = finite_difference_check(model, joints, rates, args.link,
                                           np.array(args.point), h=args.check_fd)
    if args.csv:
        header = "vx,vy,vz,wx,wy,wz"
        row = list(vel.linear) + list(vel.angular)
        if residual is not None:
            header += ",fd_residual"
            row.append(residual)
        print(header)
        print(_csv_row(row))
    else:
        print(f"v={textfmt.fmt_vector(vel.linear)} w={textfmt.fmt_vector(vel.angular)}")
        if residual is not None:
            print(f"fd_residual={textfmt.fmt_float(residual)}")
    return 0


def _print_matrix(matrix, csv: bool) -> None:
    if csv:
        print("r11,r12,r13,r21,r22,r23,r31,r32,r33")
        print(_csv_row(matrix.ravel()))
    else:
        print(textfmt.fmt_matrix(matrix))


def _cmd_rot(args) -> int:
    if args.form == "exp":
        angle = math.radians(args.angle) if args.degrees else args.angle
        _print_matrix(exp_so3(np.array(args.axis), angle), args.csv)
    elif args.form == "log":
        matrix = np.array(args.matrix).reshape(3, 3)
        vector = log_so3(validate_rotation(matrix))
        if args.csv:
            print("x,y,z")
            print(_csv_row(vector))
        else:
            print(textfmt.fmt_vector(vector))
    else:
        angles = [math.radians(a) for a in args.angles] if args.degrees else args.angles
        _print_matrix(rpy(*angles), args.csv)
    return 0


def _cmd_tree(args) -> int:
    model = _load_robot(args.robot)
    rows = []
    for nid in model.traverse():
        rec = model.link(nid)
        rows.append(rec)
    if args.csv:
        print("id,name,parent,child,sibling,ax,ay,az,ox,oy,oz")
        for rec in rows:
            cells = [str(rec.self_id), rec.name,
                     "none" if rec.parent_id is None else str(rec.parent_id),
                     "none" if rec.child_id is None else str(rec.child_id),
                     "none" if rec.sibling_id is None else str(rec.sibling_id)]
            cells += [textfmt.fmt_float(v) for v in rec.joint_axis]
            cells += [textfmt.fmt_float(v) for v in rec.offset]
            print(",".join(cells))
    else:
        for rec in rows:
            print(f"id={rec.self_id} name={rec.name} "
                  f"parent={'none' if rec.parent_id is None else rec.parent_id} "
                  f"child={'none' if rec.child_id is None else rec.child_id} "
                  f"sibling={'none' if rec.sibling_id is None else rec.sibling_id} "
                  f"axis={textfmt.fmt_vector(rec.joint_axis)} "
                  f"offset={textfmt.fmt_vector(rec.offset)}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkin",
        description="Rigid-body kinematics: forward kinematics, end-point "
                    "velocity and rotation utilities over .rkin robot files.")
    sub = parser.add_subparsers(dest="command", required=True)

    fk = sub.add_parser("fk", help="world position and rotation of a link point")
    fk.add_argument("--robot", required=True, help="path to the .rkin robot file")
    fk.add_argument("--joints", type=_joint_map, default={},
                    help="joint angles as id=val,... (rad unless --degrees)")
    fk.add_argument("--link", type=int, required=True, help="link id to query")
    fk.add_argument("--point", type=_float_list(3), default=[0.0, 0.0, 0.0],
                    help="link-local point fx,fy,fz (default origin)")
    fk.add_argument("--degrees", action="store_true", help="angles are degrees")
    fk.add_argument("--csv", action="store_true", help="header row plus one data row")
    fk.set_defaults(handler=_cmd_fk)

    vel = sub.add_parser("vel", help="world linear/angular velocity of a link point")
    vel.add_argument("--robot", required=True)
    vel.add_argument("--joints", type=_joint_map, default={})
    vel.add_argument("--djoints", type=_joint_map, default={},
                     help="joint rates as id=val,... (rad/s unless --degrees)")
    vel.add_argument("--link", type=int, required=True)
    vel.add_argument("--point", type=_float_list(3), default=[0.0, 0.0, 0.0])
    vel.add_argument("--check-fd", type=float, default=None, metavar="H",
                     help="also print the finite-difference residual at step H")
    vel.add_argument("--degrees", action="store_true")
    vel.add_argument("--csv", action="store_true")
    vel.set_defaults(handler=_cmd_vel)

    rot = sub.add_parser("rot", help="rotation-matrix utilities")
    rot_sub = rot.add_subparsers(dest="form", required=True)
    rot_exp = rot_sub.add_parser("exp", help="rotation matrix from unit axis and angle")
    rot_exp.add_argument("--axis", type=_float_list(3), required=True)
    rot_exp.add_argument("--angle", type=float, required=True)
    rot_exp.add_argument("--degrees", action="store_true")
    rot_exp.add_argument("--csv", action="store_true")
    rot_log = rot_sub.add_parser("log", help="rotation vector from a rotation matrix")
    rot_log.add_argument("--matrix", type=_float_list(9), required=True,
                         help="9 row-major entries r11,...,r33")
    rot_log.add_argument("--csv", action="store_true")
    rot_rpy = rot_sub.add_parser("rpy", help="roll-pitch-yaw composed rotation")
    rot_rpy.add_argument("--angles", type=_float_list(3), required=True,
                         help="roll,pitch,yaw")
    rot_rpy.add_argument("--degrees", action="store_true")
    rot_rpy.add_argument("--csv", action="store_true")
    rot.set_defaults(handler=_cmd_rot)

    tree = sub.add_parser("tree", help="print the link tree in traversal order")
    tree.add_argument("--robot", required=True)
    tree.add_argument("--csv", action="store_true")
    tree.set_defaults(handler=_cmd_tree)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CORE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
