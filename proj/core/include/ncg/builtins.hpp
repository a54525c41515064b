#pragma once

namespace ncg::builtins {

// Quantized SU(2) coordinate algebra. Rules sort words towards the basis
// a^i b^j c^k / d^l b^j c^k; both orders of the a,d pair reduce through the
// unit relations, which makes the system locally confluent.
inline constexpr const char* su2_presentation = R"(name: su2
[generators]
a 1
b -1
c 1
d -1
[rules]
b a -> q a b
c a -> q a c
c b -> b c
b d -> q^-1 d b
c d -> q^-1 d c
d a -> 1 + q b c
a d -> 1 + q^-1 b c
[star]
a -> d
b -> -q^-1 c
c -> -q b
d -> a
)";

// Quantum disk with the radial element w = 1 - zb z as a declared generator.
inline constexpr const char* disk_presentation = R"(name: disk
[generators]
z 1
zb -1
w 0
[rules]
zb z -> 1 - w
z zb -> 1 - q^-2 w
z w -> q^-2 w z
zb w -> q^2 w zb
[star]
z -> zb
zb -> z
w -> w
)";

// Disk localized at w, used by the Chern examples that need w^-1.
inline constexpr const char* disk_localized_presentation = R"(name: disk-localized
[generators]
z 1
zb -1
w 0
wi 0
[rules]
zb z -> 1 - w
z zb -> 1 - q^-2 w
z w -> q^-2 w z
zb w -> q^2 w zb
w wi -> 1
wi w -> 1
z wi -> q^2 wi z
zb wi -> q^-2 wi zb
[star]
z -> zb
zb -> z
w -> w
wi -> wi
[inverse]
w wi
)";

// 2x2 matrices as the algebra generated by the two off-diagonal matrix
// units; the basis is {1, E12, E21, E12 E21}.
inline constexpr const char* m2_presentation = R"(name: m2
[generators]
E12 0
E21 0
[rules]
E12 E12 -> 0
E21 E21 -> 0
E21 E12 -> 1 - E12 E21
[star]
E12 -> E21
E21 -> E12
)";

}  // namespace ncg::builtins
