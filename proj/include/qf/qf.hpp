#pragma once

// Umbrella header: the whole workbench.

#include "qf/abelian.hpp"
#include "qf/caps.hpp"
#include "qf/cli.hpp"
#include "qf/derived.hpp"
#include "qf/envelope.hpp"
#include "qf/errors.hpp"
#include "qf/group.hpp"
#include "qf/invariants.hpp"
#include "qf/io.hpp"
#include "qf/lattice.hpp"
#include "qf/matrix.hpp"
#include "qf/perm.hpp"
#include "qf/quandle.hpp"
#include "qf/rep.hpp"
#include "qf/word.hpp"
