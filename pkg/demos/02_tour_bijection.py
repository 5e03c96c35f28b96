# %% [markdown]
# # A tour is its departure sequences
#
# Record, for every vertex, the order in which the tour leaves towards each
# neighbor. Together with the plane tree these sequences rebuild the tour.

# %%
from hypercat import decompose_walk, reconstruct_walk, tours_on_tree
from hypercat.oracle import enumerate_departure_sequences, enumerate_k_tours

# %%
walk = (0, 1, 0, 2, 0, 1, 3, 1, 3, 1, 0, 2)
tree, seqs = decompose_walk(walk, k=2)
print("tree outdegrees (preorder):", tree.outdegrees)
for v, s in enumerate(seqs):
    print(f"  vertex {v}: departs to {s}")
print("rebuilt:", reconstruct_walk(tree, seqs))

# %% [markdown]
# The number of valid sequence assignments on a tree is a product of local
# counts, one per vertex.

# %%
assignments = list(enumerate_departure_sequences(tree, 2))
print(len(assignments), "assignments;", tours_on_tree(tree, 2), "from the product formula")

# %%
tours = list(enumerate_k_tours(3, 2))
images = {decompose_walk(w, 2) for w in tours}
print(f"{len(tours)} 2-tours on 3 edges, {len(images)} distinct decompositions")
