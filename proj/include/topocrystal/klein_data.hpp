#pragma once

// Bundled edge lists for the two Klein quartic tilings, in the standard
// graph file format.  Generated from a (2,3,7) rotation triple of PSL(2,7):
// vertices, edges and faces are the cosets of the cyclic subgroups generated
// by the order-7, order-2 and order-3 rotations.  Validated against the exact
// spanning tree counts before freezing.

namespace topocrystal {

// {3,7} triangulation skeleton: 24 vertices, 84 edges, 7-regular.
inline constexpr const char* klein_triangular_data = R"(v 24
e 0 1
e 0 6
e 0 8
e 0 10
e 0 15
e 0 17
e 0 21
e 1 2
e 1 10
e 1 12
e 1 18
e 1 20
e 1 21
e 2 3
e 2 7
e 2 12
e 2 14
e 2 16
e 2 21
e 3 4
e 3 7
e 3 9
e 3 17
e 3 19
e 3 21
e 4 5
e 4 9
e 4 11
e 4 15
e 4 20
e 4 21
e 5 6
e 5 11
e 5 13
e 5 16
e 5 18
e 5 21
e 6 8
e 6 13
e 6 14
e 6 19
e 6 21
e 7 10
e 7 11
e 7 16
e 7 17
e 7 22
e 8 11
e 8 12
e 8 14
e 8 15
e 8 22
e 9 12
e 9 13
e 9 19
e 9 20
e 9 22
e 10 13
e 10 17
e 10 18
e 10 22
e 11 15
e 11 16
e 11 22
e 12 14
e 12 20
e 12 22
e 13 18
e 13 19
e 13 22
e 14 16
e 14 19
e 14 23
e 15 17
e 15 20
e 15 23
e 16 18
e 16 23
e 17 19
e 17 23
e 18 20
e 18 23
e 19 23
e 20 23
)";

// {7,3} heptagonal tiling skeleton: 56 vertices, 84 edges, cubic.
inline constexpr const char* klein_heptagonal_data = R"(v 56
e 0 1
e 0 6
e 0 27
e 1 2
e 1 21
e 2 3
e 2 22
e 3 4
e 3 23
e 4 5
e 4 24
e 5 6
e 5 25
e 6 26
e 7 10
e 7 11
e 7 52
e 8 11
e 8 12
e 8 53
e 9 12
e 9 13
e 9 54
e 10 13
e 10 55
e 11 49
e 12 50
e 13 51
e 14 16
e 14 19
e 14 40
e 15 17
e 15 20
e 15 38
e 16 18
e 16 36
e 17 19
e 17 41
e 18 20
e 18 39
e 19 37
e 20 35
e 21 28
e 21 43
e 22 29
e 22 44
e 23 30
e 23 45
e 24 31
e 24 46
e 25 32
e 25 47
e 26 33
e 26 48
e 27 34
e 27 42
e 28 35
e 28 50
e 29 36
e 29 52
e 30 37
e 30 54
e 31 38
e 31 49
e 32 39
e 32 51
e 33 40
e 33 53
e 34 41
e 34 55
e 35 42
e 36 43
e 37 44
e 38 45
e 39 46
e 40 47
e 41 48
e 42 51
e 43 53
e 44 55
e 45 50
e 46 52
e 47 54
e 48 49
)";

}  // namespace topocrystal
