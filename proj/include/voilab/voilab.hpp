#pragma once

#include "voilab/bayes.hpp"
#include "voilab/error.hpp"
#include "voilab/fuzz.hpp"
#include "voilab/instance_io.hpp"
#include "voilab/interaction.hpp"
#include "voilab/localization.hpp"
#include "voilab/model.hpp"
#include "voilab/reference_instance.hpp"
#include "voilab/rational.hpp"
#include "voilab/scanner.hpp"
#include "voilab/value.hpp"
