#pragma once

#include "nmf_forge/cooccurrence.hpp"
#include "nmf_forge/corpus.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/hnmf.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/nmf.hpp"
#include "nmf_forge/pipeline.hpp"
#include "nmf_forge/semantic_nmf.hpp"
#include "nmf_forge/serialize.hpp"
#include "nmf_forge/stopwords.hpp"
#include "nmf_forge/supervised.hpp"
#include "nmf_forge/synth.hpp"
#include "nmf_forge/vectorizer.hpp"
