/// Expressions that must parse and survive a print/parse round trip.
pub const CORPUS: [&str; 50] = [
    "[0,1]",
    "(0,1)",
    "[0,1)",
    "(0,1]",
    "{0}",
    "{-2.5}",
    "(-inf,inf)",
    "(-inf,0]",
    "[0,inf)",
    "[0,1],[0,1]",
    "[0,1) x [0,1)",
    "[0,3),[0,3] \\ (1,2),(1,2)",
    "A | B & C",
    "!A x B",
    "!!A",
    "!(A) x B",
    "(A | B) & C",
    "A \\ B \\ C",
    "A | B | C",
    "A x B x C",
    "A & B x C | D",
    "translate([0,1], 2)",
    "translate([0,1],[0,1], 1, -1)",
    "scale([0,1), 2)",
    "scale(A | B, 0.5)",
    "permute(A x B, 1, 0)",
    "reflect([0,1), 0)",
    "reflect(permute([0,1],{2}, 1, 0), 1)",
    "!((0,inf))",
    "((A))",
    "[1e-3,2.5E2]",
    "[-1.25,+3]",
    "{0},[0,1],(2,3]",
    "({0} | {1}) x [0,1]",
    "[0,2] \\ [1,2]",
    "([0,1] x [0,1]) & ([1,2] x [0,1])",
    "translate({0} x [0,1], 1, 0)",
    "ring_2 | hole",
    "x1 x x2",
    "A x (B | C)",
    "!A | !B",
    "!(A | B) & C",
    "scale(translate(A, 1, 1), 3.7)",
    "[0,0.1] | [0.2,0.30000000000000004]",
    "(0,1),(0,1),(0,1)",
    "[0,1] x {0} | {5} x {5}",
    "permute((0,1) x [0,2) x {3}, 2, 0, 1)",
    "A\\B|C&D",
    "  [0 , 1 ]\n|\t{2}  ",
    "(-inf,-1) | (1,inf)",
];

/// Source, byte offset of the error, one expected item.
pub const ERROR_CASES: [(&str, usize, &str); 12] = [
    ("[0,", 3, "NUMBER"),
    ("[0,1", 4, "\"]\""),
    ("[0 1]", 3, "\",\""),
    ("A |", 3, "\"[\""),
    ("A x !B", 4, "\"[\""),
    ("(A | B", 6, "\")\""),
    ("[0,1] ]", 6, "end of input"),
    ("[-inf,0]", 0, "\"(\" before an infinite bound"),
    ("(0,inf]", 6, "\")\" after an infinite bound"),
    ("{inf}", 1, "NUMBER"),
    ("scale([0,1) 2)", 12, "\",\""),
    ("[0,1] @", 6, "a token"),
];
