#pragma once

#include "maskreg/volume.h"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace maskreg {

/// 2|A n B| / (|A| + |B|) over voxels carrying `label`; empty when neither
/// volume contains the label.
std::optional<double> dice(const LabelVolume& a, const LabelVolume& b, int label);

/// Symmetric Hausdorff distance in mm between the voxel sets carrying
/// `label`, computed exactly from Euclidean distance transforms that honour
/// the grid spacing. Throws std::invalid_argument if either set is empty.
double hausdorff(const LabelVolume& a, const LabelVolume& b, int label);

/// max over a in A of the distance to the nearest voxel of B, in mm.
double directed_hausdorff(const LabelVolume& a, const LabelVolume& b, int label);

/// Squared Euclidean distance (mm^2) from every voxel to the nearest voxel
/// where `inside` is true; +inf everywhere if the set is empty.
std::vector<double> squared_distance_transform(const GridMeta& meta, const std::vector<bool>& inside);

struct DiceRow
{
    std::string subject;
    int label_id = 0;
    std::string label_name;
    double dice = 0.0;
};

using DiceTable = std::vector<DiceRow>;

/// One row per foreground label present in either volume.
DiceTable dice_rows(const std::string& subject, const LabelVolume& reference, const LabelVolume& warped);

/// CSV `subject,label_id,label_name,dice`.
void write_dice_table(const DiceTable& table, const std::filesystem::path& path);
DiceTable read_dice_table(const std::filesystem::path& path);

/// Mean of the dice column; NaN for an empty table.
double mean_dice(const DiceTable& table);

} // namespace maskreg
