#ifndef COVNET_CHECKPOINT_HPP
#define COVNET_CHECKPOINT_HPP

#include <string>

#include <json.hpp>

#include "covnet/neural.hpp"

namespace covnet {

inline constexpr int kCheckpointFormatVersion = 1;

// Self-describing JSON document: format version, architecture, every
// parameter tensor row-major, the init seed and whatever training
// metadata the caller supplies. Values survive a save/load round trip
// exactly.
template <typename T>
void save_checkpoint(const Model<T>& model, const nlohmann::ordered_json& training_meta,
                     const std::string& path);

// Throws std::runtime_error on version/architecture problems.
template <typename T>
Model<T> load_checkpoint(const std::string& path,
                         nlohmann::ordered_json* training_meta = nullptr);

} // namespace covnet

#endif // COVNET_CHECKPOINT_HPP
