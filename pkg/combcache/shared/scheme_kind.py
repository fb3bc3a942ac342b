# Don't use enum here because it's easier to serialize and compare strings.
class SchemeKind:
    ROUTING = "routing"
    BASELINE = "baseline"
    ASYMMETRIC = "asymmetric"

    ALL = (ROUTING, BASELINE, ASYMMETRIC)
    CODED = (BASELINE, ASYMMETRIC)


class CheckStatus:
    PASS = "PASS"
    FAIL = "FAIL"
