#pragma once

#include "hlemb/rational.hpp"
#include "hlemb/matrix.hpp"
#include "hlemb/shuffle.hpp"
#include "hlemb/tensor.hpp"
#include "hlemb/structures.hpp"
#include "hlemb/brackets.hpp"
#include "hlemb/cochains.hpp"
#include "hlemb/cohomology.hpp"
#include "hlemb/deformation.hpp"
#include "hlemb/graded.hpp"
#include "hlemb/linfty.hpp"
#include "hlemb/io.hpp"
