#pragma once

// Reference renderings of the shipped REBACT prompt templates with each
// slot filled by its display placeholder. The defaults must reproduce
// these byte-for-byte.

inline const char kTextcraftPromptReference[] = R"REF(You can perform the following actions to interact with the environment: 
- craft [target count] [target item] using [count] [item]
- get [count] [item]
- inventory
Here [count] is a place holder for number of object, and [item] is placeholder for name of object.

Please decide whether the previous action '{}' needs to be modified and decide the most appropriate next action. If the previous action needs to be modified, make sure the modified action is different from the previous action and it is executable. The next action should be different from the modified action. If the previous action does not need to be modified, repeat the previous action as the modified action.
Please reply in this format: "Previous action '{}' is [correct or wrong]. It should be modified to: [action].
The next action is: [action]." 

You are given few useful crafting recipes to craft items in Minecraft. Crafting commands are of the format "craft [target object] using [input ingredients]". You can either "fetch" an object (ingredients) from the inventory or the environment or "craft" (target) using any of the crafting commands. You can use ONLY these crafting commands provided, do not use your own crafting commands. However, if the crafting command uses a generic ingredient like "planks", you can use special types of the same ingredient e.g. "dark oak planks" in the command instead. For any other natural language or thoughts, use prefix 'think: '.

Here is a demo of how to fetch and craft objects.

<atomic examples>
Here is an example of a complex goal.
<React example>
Here is a different goal with different craft commands. You can take the help of crafting commands below to create new objects. Keep in mind that:
- It is okay to generate more target objects than your goal.
- Be very careful with the count of objects, SAME object counts mentioned in the input crafting command. 
- You cannot use a partial crafting command recipe, i.e. if the recipe generates 2 objects you CANNOT alter it to produce just 1. 
- Also, you can use ONLY 1 crafting command in your plan.
<new task description>
<current observation-action pairs>
)REF";

inline const char kWebshopPromptReference[] = R"REF(You are currently on the search results page. You will be given the current request of purchasing a product, the previous search action, and the most recent observation from the website.
Your task is to 
1. decide whether any of the previous {} actions (see below) needs to be modified. 
2. decide the most appropriate next action. 

When you reply, you must follow these rules:
1. If you think any previous actions is wrong and want to modify the previous action, you must provide the modified action that is different from the previous action. If the modified action is a click action, you can only click on options enclosed in square brackets [] from the closest observation before that previous action.
2. When you determine the next action, you can only click on text enclosed in '[]' from the most recent observation after current request.
3. The action could only be either 'click' or 'search'. You must replace the 'action' word in the following reply template with either 'click' or 'search'.

You must reply in this format:
"Previous action {} is [correct or wrong]. This action should be modified to: action[...]
The next action is: action[...]"

<a successful example>
<current observation-action pairs>
)REF";

inline const char kAlfworldPromptReference[] = R"REF(You are a helpful robot navigating through a household. Your task is related to some of the following tasks:
- Put an item in/on a receptacle
- Take an item from a receptacle
- Heat an item with a receptacle
- Cool an item with a receptacle
- Clean an item with a receptacle
- Use a desklamp to look at an item
You can only hold one item in your hand. If you have previously taken an item and want to take another, you will need to put the previously held item down.
The name of the item you take must exactly match the name given in the task description. To find the right item, you can look in any possible places. You can start your search where the item is most likely to be found.

Please decide whether the previous action '{}' needs to be corrected and decide the most appropriate next action. If the previous action needs to be corrected, make sure the corrected action is different from the previous action and it is executable. The next action should be different from the corrected action. If the previous action does not need to be corrected, repeat the previous action as the corrected action.
Please reply in this format: "Previous action '{}' is [correct or wrong]. To fix this mistake, I should execute: [action].
The next action is: [action]."

Interact with a household to solve a task. Here are two examples.
<examples>
Here is the task
<new task description>
<current observation-action pairs>
)REF";
