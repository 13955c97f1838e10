#pragma once

#include "semrel/analysis.hpp"
#include "semrel/corpus.hpp"
#include "semrel/embedding_store.hpp"
#include "semrel/error.hpp"
#include "semrel/gam.hpp"
#include "semrel/relevance.hpp"
