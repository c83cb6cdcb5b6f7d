#pragma once

#include "twoclosure/errors.hpp"
#include "twoclosure/permutation.hpp"
#include "twoclosure/perm_group.hpp"
#include "twoclosure/subgroups.hpp"
#include "twoclosure/orbital.hpp"
#include "twoclosure/closure.hpp"
#include "twoclosure/action_space.hpp"
#include "twoclosure/homomorphism.hpp"
#include "twoclosure/constructions.hpp"
#include "twoclosure/witnesses.hpp"
#include "twoclosure/catalog.hpp"
#include "twoclosure/classifier.hpp"
#include "twoclosure/suites.hpp"
