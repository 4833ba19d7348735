import unittest
from fractions import Fraction

from symcensus.census import CensusRow
from symcensus.emit import (emit, emit_table, formats, parse_json_rows,
    UnknownFormatError)

HEADER = "k,n,p,i,j,newform_sum,cm_count,lower_bound,ratio_num,ratio_den\n"

class EmitTest(unittest.TestCase):
    def test_empty(self):
        self.assertEqual(emit([], "csv"), HEADER)
        self.assertEqual(emit([], "json"), "[]\n")

    def test_csv(self):
        row = CensusRow(12, 2, 13, 1, 69, 0)
        self.assertEqual(emit([row], "csv"),
            HEADER + "12,2,13,1,4,69,0,69,69,169\n")

    def test_reduced_ratio(self):
        row = CensusRow(4, 3, 3, 2, 18, 0)
        self.assertEqual(row.ratio, Fraction(2, 9))
        self.assertTrue(emit([row], "csv").endswith(",18,0,18,2,9\n"))

    def test_json(self):
        rows = [CensusRow(12, 2, 13, 1, 69, 0), CensusRow(4, 3, 3, 2, 3, 1)]
        self.assertEqual(parse_json_rows(emit(rows, "json")), rows)

    def test_stable(self):
        rows = [CensusRow(12, 8, 31, 1, 440, 0)]
        self.assertEqual(emit(rows, "json"), emit(list(rows), "json"))

    def test_table(self):
        self.assertEqual(emit_table(["a", "b"], [[1, "x y"]], "csv"),
            "a,b\n1,x y\n")

    def test_unknown(self):
        self.assertEqual(formats(), ["csv", "json"])
        with self.assertRaises(UnknownFormatError):
            emit([], "xml")
