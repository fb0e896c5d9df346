#pragma once

#include "ppinv/error.hpp"
#include "ppinv/bigint.hpp"
#include "ppinv/scan.hpp"
#include "ppinv/field.hpp"
#include "ppinv/cyclotomic.hpp"
#include "ppinv/characters.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/exppoly.hpp"
#include "ppinv/families.hpp"
#include "ppinv/theorems.hpp"
#include "ppinv/search.hpp"
#include "ppinv/serialize.hpp"
#include "ppinv/catalog.hpp"
