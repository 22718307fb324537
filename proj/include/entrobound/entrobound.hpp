#pragma once

#include "entrobound/errors.hpp"
#include "entrobound/extremal.hpp"
#include "entrobound/measures.hpp"
#include "entrobound/oracle.hpp"
#include "entrobound/sampling.hpp"
#include "entrobound/simplex.hpp"
#include "entrobound/spectra.hpp"
