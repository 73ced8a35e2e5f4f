#pragma once

#include "mealy/certify.hpp"
#include "mealy/errors.hpp"
#include "mealy/io.hpp"
#include "mealy/machine.hpp"
#include "mealy/orbit.hpp"
#include "mealy/structure.hpp"
