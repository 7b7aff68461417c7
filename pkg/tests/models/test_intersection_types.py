from toruslab.models import HessianSignature, IntersectionType


class TestIntersectionType:
    def test_members(self):
        assert set(IntersectionType.__members__) == {
            "TYPE_1",
            "TYPE_2",
            "TYPE_3",
            "TYPE_4",
            "UNCLASSIFIED",
        }

    def test_labels(self):
        assert [t.label for t in IntersectionType] == ["1", "2", "3", "4", "unclassified"]


class TestHessianSignature:
    def test_members(self):
        assert set(HessianSignature.__members__) == {
            "SADDLE",
            "MINIMUM",
            "MAXIMUM",
            "DEGENERATE",
        }
