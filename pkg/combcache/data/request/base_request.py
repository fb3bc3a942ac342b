import typing
from dataclasses import MISSING, Field
from typing import Dict, List


class Request:
    pass


class InvalidRequest(Request):
    def __init__(self):
        self.errors = []

    def add_error(self, parameter, message):
        self.errors.append({"parameter": parameter, "message": message})

    def has_errors(self):
        return len(self.errors) > 0

    def describe(self):
        return "; ".join(f"{e['parameter']}: {e['message']}" for e in self.errors)

    def __bool__(self):
        return False


class ValidRequest(Request):
    @classmethod
    def from_dict(cls, dict_data):
        raise NotImplementedError

    def __bool__(self):
        return True


def validate_request_data_common(
    fields: List[Field], dict_data: Dict, invalid_req: InvalidRequest
):
    check_missing_fields(fields, dict_data, invalid_req)
    check_invalid_field_type(fields, dict_data, invalid_req)
    check_invalid_request_fields(fields, dict_data, invalid_req)


def check_invalid_request_fields(
    fields: List[Field], dict_data: Dict, invalid_req: InvalidRequest
):
    field_names = set([field.name for field in fields])
    for key in dict_data:
        if key not in field_names:
            invalid_req.add_error(parameter=key, message=f"Invalid field {key}.")


def _accepted_types(tp) -> tuple:
    """Optional[int] -> (int, NoneType), List[int] -> (list,)"""
    origin = typing.get_origin(tp)
    if origin is typing.Union:
        res = ()
        for arg in typing.get_args(tp):
            res += _accepted_types(arg)
        return res
    if origin is not None:
        return (origin,)
    return (tp,)


def check_invalid_field_type(
    fields: List[Field], dict_data: Dict, invalid_req: InvalidRequest
):
    for field in fields:
        if field.name not in dict_data:
            continue
        value = dict_data[field.name]
        accepted = _accepted_types(field.type)
        # bool is an int subclass; a JSON `true` is never a count.
        if isinstance(value, bool) and bool not in accepted:
            ok = False
        else:
            ok = isinstance(value, accepted)
        if not ok:
            invalid_req.add_error(
                parameter=field.name,
                message=f"Field {field.name} expects {field.type} "
                f"but received {type(value)}",
            )


def check_missing_fields(
    fields: List[Field], dict_data: Dict, invalid_req: InvalidRequest
):
    for field in fields:
        required = field.default is MISSING and field.default_factory is MISSING
        if required and field.name not in dict_data:
            invalid_req.add_error(parameter=field.name, message=f"Missing field {field.name}.")
