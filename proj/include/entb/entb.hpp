#pragma once

#include "entb/bounds.hpp"
#include "entb/criteria.hpp"
#include "entb/errors.hpp"
#include "entb/io.hpp"
#include "entb/loo.hpp"
#include "entb/qstate.hpp"
#include "entb/rearrange.hpp"
#include "entb/types.hpp"
