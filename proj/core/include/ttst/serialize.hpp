#pragma once

#include <iosfwd>
#include <string>

#include "ttst/tt.hpp"

namespace ttst {

/// Binary checkpoint format: 4-byte magic ("TTV1"/"TTO1"), int32 core count,
/// then per core the int32 shape followed by the row-major entries as doubles.
/// Little-endian host layout; intended for local checkpointing, not exchange.
void tt_save(std::ostream& os, const TtVector& x);
void tt_save(std::ostream& os, const TtOperator& a);
TtVector tt_load_vector(std::istream& is);
TtOperator tt_load_operator(std::istream& is);

void tt_save_file(const std::string& path, const TtVector& x);
TtVector tt_load_vector_file(const std::string& path);

}  // namespace ttst
